#include "doctest.h"

#include <cmath>

#include "ffapprox/cfrac.hpp"
#include "ffapprox/random.hpp"
#include "ffapprox/sources.hpp"

using namespace ffa;

TEST_CASE("finite expansion of T/(T^2+1)") {
    auto F3 = Field::make(3);
    auto xi = rational_series(RatFn(TPoly(F3, {0, 1}), TPoly(F3, {1, 0, 1})), 32);
    auto e = cf_expand(xi, 10);
    CHECK(e.finite);
    REQUIRE(e.quotients.size() == 3);
    CHECK(e.quotients[0].is_zero());
    CHECK(e.quotients[1] == TPoly(F3, {0, 1}));
    CHECK(e.quotients[2] == TPoly(F3, {0, 1}));
    for (bool b : cf_exactness_check(xi, e)) CHECK(b);
    CHECK_THROWS_AS(cf_w1_estimate(cf_expand(rational_series(RatFn(TPoly(F3, {1}), TPoly(F3, {0, 1})), 8), 5)),
                    Error);
}

TEST_CASE("1/T") {
    auto F2 = Field::make(2);
    auto e = cf_expand(rational_series(RatFn(TPoly(F2, {1}), TPoly(F2, {0, 1})), 8), 4);
    CHECK(e.finite);
    REQUIRE(e.quotients.size() == 2);
    CHECK(e.quotients[1] == TPoly(F2, {0, 1}));
}

TEST_CASE("Mahler series over F3: w1 = 2 at q = T^3") {
    auto F3 = Field::make(3);
    auto xi = mahler_series(F3, 64);
    auto e = cf_expand(xi, 12);
    CHECK_FALSE(e.finite);
    for (bool b : cf_exactness_check(xi, e)) CHECK(b);
    auto w = cf_w1_estimate(e);
    CHECK(w.value == Rational(2));
    CHECK(Rational(*xp_eval(w.witness, xi).valuation(), w.witness.height_exponent()) == w.value);
    bool seen = false;
    for (std::size_t k = 0; k + 1 < e.convergents.size(); ++k) {
        const auto& [pk, qk] = e.convergents[k];
        if (qk.degree() != 3) continue;
        seen = true;
        CHECK(qk == TPoly::monomial(F3, 1, 3));
        CHECK(pk == TPoly(F3, {1, 0, 1}));
        CHECK(*xp_eval(XPoly::linear(qk, pk), xi).valuation() == 6);
    }
    CHECK(seen);
}

TEST_CASE("convergent identities and exactness on named series") {
    std::vector<LaurentSeries> corpus;
    for (int p : {2, 3, 5}) {
        auto F = Field::make(p);
        corpus.push_back(mahler_series(F, 64));
        corpus.push_back(factorial_series(F, 64));
        for (std::uint64_t s = 1; s <= 4; ++s) corpus.push_back(random_series(F, s, 64));
    }
    for (const auto& xi : corpus) {
        auto e = cf_expand(xi, 8);
        REQUIRE(e.raw.size() == e.quotients.size());
        for (std::size_t k = 1; k < e.raw.size(); ++k) {
            const auto& [p1, q1] = e.raw[k];
            const auto& [p0, q0] = e.raw[k - 1];
            auto det = p1 * q0 - p0 * q1;
            CHECK(det.degree() == 0);
            CHECK(q1.degree() > q0.degree());
        }
        for (bool b : cf_exactness_check(xi, e)) CHECK(b);
        for (const auto& [p, q] : e.convergents) CHECK(q.lead() == 1);
    }
}

TEST_CASE("best approximations are the convergents (exhaustive over small q)") {
    // max over deg q <= d of nu(q xi - round(q xi)) equals deg q_{k+1} with deg q_k <= d < deg q_{k+1}
    for (int p : {2, 3}) {
        auto F = Field::make(p);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto xi = random_series(F, seed, 128);
            auto e = cf_expand(xi, 10);
            const int dmax = p == 2 ? 6 : 4;
            std::vector<std::int64_t> best(dmax + 1, INT64_MIN);
            const int count = static_cast<int>(std::pow(p, dmax + 1));
            for (int key = 1; key < count; ++key) {
                std::vector<Elem> c;
                for (int k = key; k > 0; k /= p) c.push_back(static_cast<Elem>(k % p));
                TPoly q(F, c);
                auto frac = poly_part(xi.times(q)).second;
                const std::int64_t v = *frac.valuation();
                for (int d = q.degree(); d <= dmax; ++d) best[d] = std::max(best[d], v);
            }
            for (int d = 0; d <= dmax; ++d) {
                std::size_t k = 0;
                while (k + 1 < e.convergents.size() && e.convergents[k + 1].second.degree() <= d) ++k;
                REQUIRE(k + 1 < e.convergents.size());
                CHECK(best[d] == e.convergents[k + 1].second.degree());
            }
        }
    }
}
