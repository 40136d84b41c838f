#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ffapprox/cli.hpp"
#include "ffapprox/corpus.hpp"
#include "ffapprox/parse.hpp"
#include "ffapprox/sources.hpp"

using namespace ffa;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int c = run_command(args, o, e);
    return {c, o.str(), e.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("expression parser") {
    auto F3 = Field::make(3);
    CHECK(parse_tpoly(F3, "T^3+2*T+1").to_string() == "T^3+2*T+1");
    CHECK(parse_tpoly(F3, "(T+1)^2") == parse_tpoly(F3, "T^2+2*T+1"));
    CHECK(parse_tpoly(F3, "-T") == parse_tpoly(F3, "2*T"));
    CHECK(parse_tpoly(F3, "4*T") == parse_tpoly(F3, "T"));
    const XPoly P = parse_xpoly(F3, "(T)*X^3+(2*T)*X+1");
    CHECK(P.degree() == 3);
    CHECK(parse_xpoly(F3, P.to_string()) == P);
    const LaurentSeries L = parse_laurent(F3, "T^-1+2*T^-3");
    CHECK(L.is_exact());
    CHECK(L.coeff(1) == 1);
    CHECK(L.coeff(2) == 0);
    CHECK(L.coeff(3) == 2);

    auto F4 = Field::make(2, 2, parse_modulus("g^2+g+1", 2));
    CHECK(F4->modulus() == std::vector<int>{1, 1, 1});
    const TPoly a = parse_tpoly(F4, "(g+1)*T+(g)");
    CHECK(parse_tpoly(F4, a.to_string()) == a);
    CHECK(parse_elem(F4, "g*g") == F4->add(F4->generator(), 1));
    CHECK_THROWS_AS(parse_elem(F3, "g"), ParseError);

    const BranchSelector b = parse_branch(F3, "val:0,lead:2");
    CHECK(b.valuation == 0);
    CHECK(b.lead == Elem{2});
    CHECK(parse_branch(F3, "val:-2").valuation == -2);
}

TEST_CASE("parse errors carry positions") {
    auto F3 = Field::make(3);
    try {
        parse_tpoly(F3, "T^2+*T");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    try {
        parse_series_spec(F3, "rational:(T");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position() == 11);
    }
    CHECK_THROWS_AS(parse_series_spec(F3, "bogus"), ParseError);
    CHECK_THROWS_AS(parse_series_spec(F3, "random:seed=x"), ParseError);
    CHECK_THROWS_AS(parse_series_spec(F3, "mahler:1"), ParseError);
    try {
        parse_series_spec(F3, "algebraic:poly=X^2+2*T^2;branch=val:-1");
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SemanticError);
    }
}

TEST_CASE("series specs round-trip") {
    auto F3 = Field::make(3);
    auto F4 = Field::make(2, 2);
    std::vector<std::pair<FieldPtr, std::string>> texts;
    for (const auto& F : {Field::make(2), F3, F4})
        for (const auto& t : corpus_specs()) texts.emplace_back(F, t);
    texts.emplace_back(F3, "algebraic:poly=(T)*X^3+(2*T)*X+1;branch=val:1");
    texts.emplace_back(F3, "literal:T^-1+T^-3");
    texts.emplace_back(F3, "laurent:T^2+1+2*T^-3");
    texts.emplace_back(F4, "rational:((g)*T+1)/(T^2+(g+1))");
    texts.emplace_back(F4, "literal:(g+1)*T^-2");
    for (const auto& [F, t] : texts) {
        CAPTURE(t);
        const SeriesSpec a = parse_series_spec(F, t);
        const SeriesSpec b = parse_series_spec(F, a.format());
        CHECK(a == b);
        CHECK(b.format() == a.format());
        CHECK(a.build(64) == b.build(64));
    }
    CHECK(parse_series_spec(F3, "laurent:T^-1").format() == "literal:T^-1");
}

TEST_CASE("corpus series") {
    auto F3 = Field::make(3);
    const LaurentSeries m = parse_series_spec(F3, "mahler").build(100);
    for (std::int64_t i = 1; i < 100; ++i) CHECK(m.coeff(i) == ((i == 1 || i == 3 || i == 9 || i == 27 || i == 81) ? 1 : 0));
    const SeriesSpec r = parse_series_spec(F3, "random:seed=42");
    CHECK(r.build(200) == parse_series_spec(F3, "random:seed=42").build(200));
    CHECK(!(r.build(200) == parse_series_spec(F3, "random:seed=43").build(200)));
    const LaurentSeries alg = parse_series_spec(F3, "algebraic:poly=(T)*X^3+(2*T)*X+1;branch=val:1").build(100);
    CHECK(alg.window(1, 100) == m.window(1, 100));
}

TEST_CASE("cf command") {
    const Run r = run({"cf", "--p", "3", "--series", "rational:(T)/(T^2+1)"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["quotients"] == json::array({"0", "T", "T"}));
    CHECK(j["finite"] == true);
}

TEST_CASE("exponent command on the Mahler series") {
    const Run r = run({"exponent", "w", "--p", "3", "--series", "mahler", "--n", "1", "--hmax", "9"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["kind"] == "w");
    CHECK(j["value"]["num"] == 2);
    CHECK(j["value"]["den"] == 1);
    CHECK(j["witness"].is_string());
    CHECK(j["field"]["p"] == 3);
    CHECK(j["window"]["h_max"] == 9);
    CHECK(j["per_level"].size() == 9);
    CHECK(j["skipped"] == 0);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 1);
    CHECK(run({"exponent"}).code == 1);
    CHECK(run({"exponent", "bogus"}).code == 1);
    CHECK(run({"exponent", "w", "--p", "4"}).code == 1);
    CHECK(run({"exponent", "w", "--series", "rational:(T"}).code == 1);
    CHECK(run({"exponent", "w", "--hmin", "3", "--hmax", "2"}).code == 1);
    CHECK(run({"roots"}).code == 1);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"corpus", "list"}).code == 0);
    CHECK(run({"reduce", "pr", "--p", "2", "--poly", "X^2+T^2+T", "--series", "literal:T^-1"}).code == 0);
    // X^2+T over F_2 collapses to a constant
    CHECK(run({"reduce", "pr", "--p", "2", "--poly", "X^2+T", "--series", "literal:1+T^-1"}).code == 1);
    CHECK(run({"verify", "reductions", "--p", "3", "--seed", "7"}).code == 0);
}

TEST_CASE("out directory artifacts are deterministic") {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "ffapprox_cli_test";
    fs::remove_all(base);
    for (const char* w : {"1", "4"}) {
        const Run r = run({"exponent", "w", "--p", "2", "--series", "random:seed=3", "--n", "2", "--hmax", "4",
                           "--workers", w, "--out", (base / w).string()});
        REQUIRE(r.code == 0);
    }
    for (const char* f : {"report.json", "tables.csv", "witnesses.txt"}) {
        CAPTURE(f);
        CHECK(fs::exists(base / "1" / f));
        CHECK(slurp(base / "1" / f) == slurp(base / "4" / f));
    }
    fs::remove_all(base);
}
