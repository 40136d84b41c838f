#include "doctest.h"

#include "ffapprox/sources.hpp"
#include "ffapprox/xpoly.hpp"

using namespace ffa;

namespace {

TPoly tp(const FieldPtr& F, std::vector<Elem> c) { return TPoly(F, std::move(c)); }

XPoly xp(const FieldPtr& F, std::vector<std::vector<Elem>> c) {
    std::vector<TPoly> v;
    for (auto& a : c) v.emplace_back(F, std::move(a));
    return XPoly(F, std::move(v));
}

XPoly random_xpoly(const FieldPtr& F, int n, int h, SplitMix64& rng) {
    std::vector<TPoly> v;
    for (int i = 0; i <= n; ++i) v.push_back(TPoly::random(F, h, rng));
    return XPoly(F, std::move(v));
}

// every candidate with deg_X in [1, deg/2] and coefficient degree <= h(P)
bool irreducible_by_trial_division(const XPoly& P) {
    const auto& F = P.field();
    const int h = P.height_exponent();
    const int q = F->q();
    for (int d = 1; 2 * d <= P.degree(); ++d) {
        const int digits = (d + 1) * (h + 1);
        std::vector<Elem> c(static_cast<std::size_t>(digits), 0);
        for (;;) {
            std::vector<TPoly> coeffs;
            for (int i = 0; i <= d; ++i)
                coeffs.emplace_back(F, std::vector<Elem>(c.begin() + i * (h + 1), c.begin() + (i + 1) * (h + 1)));
            XPoly cand(F, coeffs);
            if (cand.degree() == d && divides(cand, P)) return false;
            int k = 0;
            while (k < digits && ++c[k] == q) c[k++] = 0;
            if (k == digits) break;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("heights") {
    auto F2 = Field::make(2);
    CHECK(xp(F2, {{1}, {1, 1}, {}, {0, 0, 1}}).height() == AbsValue::power(2));
    CHECK(xp(F2, {{1}}).height() == AbsValue::power(0));
    CHECK(xp(F2, {{1}, {0, 1}, {0, 1}}).height() == AbsValue::power(1));
    CHECK_THROWS_AS(XPoly(F2).height(), Error);
}

TEST_CASE("evaluation") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    auto xi = LaurentSeries::monomial(F2, 1, 1);
    auto v = xp_eval(xp(F2, {{0, 1, 1}, {}, {1}}), xi);
    CHECK(v == LaurentSeries(F2, -2, {1, 1, 0, 0, 1}, LaurentSeries::kExact));
    CHECK(v.abs() == AbsValue::power(2));
    auto m = mahler_series(F3, 50);
    auto z = xp_eval(xp(F3, {{1}, {0, 2}, {}, {0, 1}}), m);
    CHECK(z.is_certified_zero());
    auto id = xp_eval(XPoly::x(F3), m);
    CHECK(id.truncated(40) == m.truncated(40));
    auto nz = xp_eval(xp(F3, {{1}, {0, 2}, {}, {0, 1}, {1}}), m);
    CHECK(nz.known_nonzero());
}

TEST_CASE("derivatives and separability") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    CHECK(xp(F3, {{0, 1}, {}, {}, {1}}).derivative().is_zero());
    CHECK(xp(F3, {{1}, {0, 2}, {}, {0, 1}}).derivative() == xp(F3, {{0, 2}}));
    CHECK(xp(F2, {{}, {0, 1}, {1}}).derivative() == xp(F2, {{0, 1}}));
    CHECK_FALSE(xp_is_separable(xp(F2, {{0, 1}, {}, {1}})));
    CHECK(xp_is_separable(xp(F3, {{1}, {0, 2}, {}, {0, 1}})));
    XPoly xt = xp(F2, {{0, 1}, {1}});
    CHECK_FALSE(xp_is_separable(xt * xt * XPoly::x(F2)));
    // X^{p+1} + T^p X: p-reduced but not separable
    auto flags = xp_separability(xp(F2, {{}, {0, 0, 1}, {}, {1}}));
    CHECK(flags.p_reduced);
    CHECK_FALSE(flags.separable);
    CHECK_THROWS_AS(xp_is_separable(xp(F2, {{0, 1}})), Error);
}

TEST_CASE("products and Gauss multiplicativity") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    XPoly a = xp(F2, {{1}, {0, 1}});
    CHECK(a * a == xp(F2, {{1}, {}, {0, 0, 1}}));
    CHECK((a * a).height() == a.height() * a.height());
    CHECK(XPoly::x(F2) * xp(F2, {{0, 1}, {1}}) == xp(F2, {{}, {0, 1}, {1}}));
    CHECK(xp(F3, {{1}, {0, 1}}) * xp(F3, {{0, 1}, {1}}) == xp(F3, {{0, 1}, {1, 0, 1}, {0, 1}}));
    SplitMix64 rng(101);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        for (int t = 0; t < 1000; ++t) {
            XPoly P = random_xpoly(F, static_cast<int>(rng.below(5)), static_cast<int>(rng.below(6)), rng);
            XPoly Q = random_xpoly(F, static_cast<int>(rng.below(5)), static_cast<int>(rng.below(6)), rng);
            if (P.is_zero() || Q.is_zero()) continue;
            CHECK((P * Q).height() == P.height() * Q.height());
        }
    }
}

TEST_CASE("gcd and exact division") {
    SplitMix64 rng(7);
    auto F3 = Field::make(3);
    for (int t = 0; t < 100; ++t) {
        XPoly A = random_xpoly(F3, 2, 2, rng), B = random_xpoly(F3, 2, 2, rng), C = random_xpoly(F3, 1, 2, rng);
        if (A.degree() < 1 || B.degree() < 1 || C.degree() < 1) continue;
        XPoly g = xp_gcd(A * C, B * C);
        CHECK(divides(C, g));
        CHECK(divides(g, A * C));
        CHECK(divides(g, B * C));
        CHECK(divexact(A * C, C) == A);
    }
}

TEST_CASE("factorization examples") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    auto f1 = xp_factor(xp(F2, {{0, 1, 1}, {}, {1}}));
    CHECK(f1.factors.size() == 1);
    CHECK(f1.factors[0].second == 1);
    auto f2 = xp_factor(xp(F2, {{1}, {}, {0, 0, 1}}));
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].first == xp(F2, {{1}, {0, 1}}));
    CHECK(f2.factors[0].second == 2);
    XPoly mahler = xp(F3, {{1}, {0, 2}, {}, {0, 1}});
    CHECK(xp_is_irreducible(mahler) == irreducible_by_trial_division(mahler));
    CHECK(xp_is_irreducible(mahler));
}

TEST_CASE("factorization completeness on random products") {
    SplitMix64 rng(31);
    for (auto F : {Field::make(2), Field::make(3)}) {
        for (int t = 0; t < 60; ++t) {
            XPoly P = random_xpoly(F, 1 + static_cast<int>(rng.below(2)), 2, rng) *
                      random_xpoly(F, 1 + static_cast<int>(rng.below(2)), 2, rng);
            if (t % 4 == 0) P = P.times(TPoly::random(F, 2, rng));
            if (P.degree() < 1) continue;
            auto fz = xp_factor(P);
            XPoly back = XPoly::constant(fz.content);
            for (const auto& [f, e] : fz.factors) {
                CHECK(irreducible_by_trial_division(f));
                back = back * f.pow(static_cast<unsigned>(e));
            }
            CHECK(back == P);
        }
    }
}

TEST_CASE("inseparable decomposition and coefficient Cartier maps") {
    auto F2 = Field::make(2);
    auto [j1, Q1] = xp_insep_decompose(xp(F2, {{0, 1}, {}, {}, {}, {1}}));
    CHECK(j1 == 2);
    CHECK(Q1 == xp(F2, {{0, 1}, {1}}));
    auto [j2, Q2] = xp_insep_decompose(xp(F2, {{0, 1}, {1}, {1}}));
    CHECK(j2 == 0);
    CHECK(Q2 == xp(F2, {{0, 1}, {1}, {1}}));
    auto [j3, Q3] = xp_insep_decompose(xp(F2, {{}, {}, {0, 1}, {}, {}, {}, {1}}));
    CHECK(j3 == 1);
    CHECK(Q3 == xp(F2, {{}, {0, 1}, {}, {1}}));
    XPoly Q = xp(F2, {{0, 1, 1}, {1}});
    CHECK(xp_coeff_cartier(Q, 0, 1) == xp(F2, {{0, 1}, {1}}));
    CHECK(xp_coeff_cartier(Q, 1, 1) == xp(F2, {{1}}));
    SplitMix64 rng(2);
    for (int t = 0; t < 100; ++t) {
        XPoly P = random_xpoly(F2, 3, 8, rng);
        if (P.is_zero()) continue;
        for (int s = 0; s < 4; ++s) {
            XPoly G = xp_coeff_cartier(P, s, 2);
            if (!G.is_zero()) CHECK(4 * G.height_exponent() <= P.height_exponent());
        }
    }
}

TEST_CASE("Frobenius lift identities") {
    auto F2 = Field::make(2);
    CHECK(xp_frobenius_lift(xp(F2, {{1}, {0, 1}})) == xp(F2, {{1}, {0, 0, 1}}));
    CHECK(xp_coeff_pth_power(xp(F2, {{1}, {0, 1}})) == xp(F2, {{1}, {0, 0, 1}}));
    CHECK(xp_expand_frobenius_X(xp(F2, {{0, 1}, {1}})) == xp(F2, {{0, 1}, {}, {1}}));
    SplitMix64 rng(8);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        for (int t = 0; t < 60; ++t) {
            XPoly P = random_xpoly(F, 2, 3, rng);
            if (P.is_zero()) continue;
            auto xi = random_series(F, rng.next(), 40);
            XPoly Q = xp_frobenius_lift(P);
            CHECK(Q == xp_coeff_pth_power(P));
            if (F->f() == 1) CHECK(Q == xp_substitute_t_power(P));
            CHECK(Q.height_exponent() == F->p() * P.height_exponent());
            auto lhs = xp_eval(Q, frobenius(xi));
            auto rhs = frobenius(xp_eval(P, xi));
            const auto w = std::min(lhs.prec(), rhs.prec());
            CHECK(lhs.truncated(w) == rhs.truncated(w));
            auto e1 = xp_eval(xp_expand_frobenius_X(P), xi);
            auto e2 = xp_eval(P, frobenius(xi));
            const auto w2 = std::min(e1.prec(), e2.prec());
            CHECK(e1.truncated(w2) == e2.truncated(w2));
        }
    }
}

TEST_CASE("printing") {
    auto F3 = Field::make(3);
    CHECK(xp(F3, {{1}, {0, 2}, {}, {0, 1}}).to_string() == "(T)*X^3+(2*T)*X+1");
    CHECK(xp(F3, {{0, 1}, {1}}).to_string() == "X+(T)");
}
