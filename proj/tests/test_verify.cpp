#include "doctest.h"

#include <iostream>

#include "ffapprox/sources.hpp"
#include "ffapprox/verify.hpp"

using namespace ffa;

namespace {

void expect_ok(const std::vector<VerificationReport>& reps) {
    for (const auto& r : reps) {
        CAPTURE(r.check);
        CHECK(r.passed + static_cast<std::int64_t>(r.counterexamples.size()) == r.instances);
        if (!r.gated) continue;
        CHECK(r.instances > 0);
        if (!r.ok())
            for (std::size_t i = 0; i < std::min<std::size_t>(3, r.counterexamples.size()); ++i)
                MESSAGE(r.counterexamples[i]);
        CHECK(r.ok());
    }
}

}  // namespace

TEST_CASE("identity suite") { expect_ok(verify_identity_suite(7)); }

TEST_CASE("reduction suite") {
    auto reps = verify_reduction_suite(7);
    expect_ok(reps);
    CHECK(reps[1].instances == 300);
    CHECK(reps[2].instances == 100);
}

TEST_CASE("inequality suite") {
    std::vector<NamedSeries> corpus;
    for (int p : {2, 3}) {
        auto F = Field::make(p);
        corpus.push_back({"mahler", mahler_series(F, 64)});
        corpus.push_back({"factorial", factorial_series(F, 64)});
        corpus.push_back({"random:seed=3", random_series(F, 3, 64)});
    }
    auto reps = verify_inequality_suite(corpus, {{1, 1, 4, Filter::All}, {2, 1, 4, Filter::All}}, 7);
    expect_ok(reps);
    for (const auto& r : reps)
        if (!r.gated) MESSAGE(r.check << ": " << r.passed << "/" << r.instances);
}

TEST_CASE("frobenius suite") {
    auto F2 = Field::make(2);
    std::vector<NamedSeries> corpus{{"mahler", mahler_series(F2, 64)}, {"factorial", factorial_series(F2, 64)}};
    expect_ok(verify_frobenius_suite(corpus, {{1, 1, 3, Filter::All}}, 7));
}
