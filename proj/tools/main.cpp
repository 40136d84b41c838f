#include "ffapprox/cli.hpp"

int main(int argc, char** argv) { return ffa::run_command(argc, argv); }
