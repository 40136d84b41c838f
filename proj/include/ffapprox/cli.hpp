#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ffapprox/field.hpp"
#include "ffapprox/laurent.hpp"

namespace ffa {

struct RunConfig {
    FieldPtr field;
    PrecisionBudget budget{};
    std::uint64_t enum_budget = 1ULL << 24;
    int workers = 1;
    std::uint64_t seed = 0;
    std::string format = "json";  // json | csv
    std::string out;              // directory for report.json, tables.csv, witnesses.txt
};

/// `args` excludes the program name. Exit code 0 on success, 2 when a
/// verification report fails, 1 on usage or operational errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(int argc, const char* const* argv);

}  // namespace ffa
