#include "doctest.h"

#include "ffapprox/roots.hpp"
#include "ffapprox/sources.hpp"

using namespace ffa;

namespace {

XPoly xp(const FieldPtr& F, std::vector<std::vector<Elem>> c) {
    std::vector<TPoly> v;
    for (auto& a : c) v.emplace_back(F, std::move(a));
    return XPoly(F, std::move(v));
}

// nu(P(alpha)) on the window where it is known, or the window end when all zero
std::int64_t residual_floor(const XPoly& P, const LaurentSeries& alpha) {
    auto v = xp_eval(P, alpha);
    return v.known_nonzero() ? v.start() : v.prec();
}

}  // namespace

TEST_CASE("Newton polygons") {
    auto F3 = Field::make(3);
    auto F2 = Field::make(2);
    auto np = newton_polygon(xp(F3, {{1}, {0, 2}, {}, {0, 1}}));
    REQUIRE(np.segments.size() == 2);
    CHECK(np.segments[0].slope == Rational(-1));
    CHECK(np.segments[0].length() == 1);
    CHECK(np.segments[1].slope == Rational(0));
    CHECK(np.segments[1].length() == 2);
    auto lin = newton_polygon(xp(F3, {{0, 2}, {1}}));
    REQUIRE(lin.segments.size() == 1);
    CHECK(-lin.segments[0].slope == Rational(-1));
    // T X^2 + T X + 1: the middle point (1, -1) lies below the chord
    auto ab = newton_polygon(xp(F2, {{1}, {0, 1}, {0, 1}}));
    REQUIRE(ab.segments.size() == 2);
    CHECK(ab.segments[0].slope == Rational(-1));
    CHECK(ab.segments[1].slope == Rational(0));
    // X^2 + X + T: a single segment of slope 1/2
    auto frac = newton_polygon(xp(F2, {{0, 1}, {1}, {1}}));
    REQUIRE(frac.segments.size() == 1);
    CHECK(frac.segments[0].slope == Rational(1, 2));
    CHECK(base_roots(xp(F2, {{0, 1}, {1}, {1}}), 40).empty());
}

TEST_CASE("Mahler roots over F3") {
    auto F3 = Field::make(3);
    XPoly P = xp(F3, {{1}, {0, 2}, {}, {0, 1}});
    auto roots = base_roots(P, 243);
    REQUIRE(roots.size() == 3);
    auto xi = mahler_series(F3, 243);
    std::vector<LaurentSeries> expected{xi, xi + LaurentSeries::monomial(F3, 1, 0),
                                        xi + LaurentSeries::monomial(F3, 2, 0)};
    int matched = 0;
    for (const auto& e : expected)
        for (const auto& r : roots)
            if (r.truncated(243) == e.truncated(243)) ++matched;
    CHECK(matched == 3);
    auto branch = algebraic_series(P, BranchSelector{1, std::nullopt}, 243);
    for (std::int64_t n = 1; n < 243; ++n) {
        const bool power = n == 1 || n == 3 || n == 9 || n == 27 || n == 81;
        CHECK(branch.coeff(n) == (power ? 1 : 0));
    }
    CHECK(xp_eval(P, branch).is_certified_zero());
    CHECK(algebraic_series(P, BranchSelector{0, Elem{2}}, 50).coeff(0) == 2);
    CHECK_THROWS_AS(algebraic_series(P, BranchSelector{0, std::nullopt}, 50), Error);
    CHECK_THROWS_AS(algebraic_series(P, BranchSelector{5, std::nullopt}, 50), Error);
}

TEST_CASE("T X^2 + T X + 1 over F2 is Mahler's equation for p = 2") {
    auto F2 = Field::make(2);
    XPoly P = xp(F2, {{1}, {0, 1}, {0, 1}});
    auto roots = base_roots(P, 128);
    REQUIRE(roots.size() == 2);
    auto xi = mahler_series(F2, 128);
    CHECK((roots[0].truncated(128) == xi || roots[1].truncated(128) == xi));
}

TEST_CASE("square roots by Hensel iteration") {
    auto F3 = Field::make(3);
    // T X^2 - (T + 1): X^2 = 1 + T^-1
    XPoly P = xp(F3, {{2, 2}, {}, {0, 1}});
    auto roots = base_roots(P, 60);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        CHECK(r.start() == 0);
        CHECK(r.coeff(1) == F3->mul(r.coeff(0), 2));
        auto sq = r * r;
        CHECK(sq.coeff(0) == 1);
        CHECK(sq.coeff(1) == 1);
        for (std::int64_t n = 2; n < sq.prec(); ++n) CHECK(sq.coeff(n) == 0);
    }
}

TEST_CASE("Hensel lifting") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    XPoly lin = xp(F2, {{}, {0, 1}}) - xp(F2, {{1}});  // T X - 1
    auto r = hensel_lift(lin, LaurentSeries::zero(F2), 30);
    CHECK(r.truncated(30) == LaurentSeries(F2, 1, {1}, 30));
    XPoly M = xp(F3, {{1}, {0, 2}, {}, {0, 1}});
    auto full = hensel_lift(M, LaurentSeries::monomial(F3, 1, 1), 243);
    CHECK(full.truncated(243) == mahler_series(F3, 243));
    auto exact = LaurentSeries::monomial(F2, 1, 1);
    CHECK(hensel_lift(lin, exact, 30) == exact);
    try {
        (void)hensel_lift(M, LaurentSeries::monomial(F3, 1, -1), 20);
        FAIL("expected NewtonConditionFailed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NewtonConditionFailed);
    }
}

TEST_CASE("repeated and inseparable factors") {
    auto F2 = Field::make(2);
    XPoly tx1 = xp(F2, {{1}, {0, 1}});  // T X + 1
    XPoly xt = xp(F2, {{0, 1}, {1}});   // X + T
    auto roots = base_roots(tx1 * tx1 * xt, 20);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == LaurentSeries::monomial(F2, 1, -1));
    CHECK(roots[1].truncated(20) == LaurentSeries(F2, 1, {1}, 20));
    CHECK(base_roots(xp(F2, {{0, 1}, {}, {1}}), 20).empty());
    auto r2 = base_roots(xp(F2, {{0, 0, 1}, {}, {1}}) * xp(F2, {{1}, {1}}), 20);
    REQUIRE(r2.size() == 2);
    // X^4 + T^2 X^2 ... built as Q(X^2) with Q = (Y + T^2)(Y + T^4 + T^2)
    XPoly Q = xp(F2, {{0, 0, 1}, {1}}) * xp(F2, {{0, 0, 1, 0, 1}, {1}});
    auto r3 = base_roots(xp_expand_frobenius_X(Q), 30);
    CHECK(r3.size() == 2);
    for (const auto& a : r3) CHECK(residual_floor(xp_expand_frobenius_X(Q), a) >= 25);
}

TEST_CASE("roots satisfy their polynomial and respect the Newton polygon") {
    SplitMix64 rng(77);
    for (auto F : {Field::make(2), Field::make(3)}) {
        for (int t = 0; t < 40; ++t) {
            // split part times a random factor
            XPoly P = XPoly::constant(TPoly::constant(F, 1));
            for (int k = 0; k < 2; ++k)
                P = P * XPoly::linear(TPoly::random(F, 2, rng), TPoly::random(F, 2, rng));
            std::vector<TPoly> extra;
            for (int i = 0; i <= 2; ++i) extra.push_back(TPoly::random(F, 2, rng));
            P = P * XPoly(F, extra);
            if (P.degree() < 1) continue;
            auto roots = base_roots(P, 40);
            auto np = newton_polygon(P);
            for (const auto& a : roots) {
                if (a.is_certified_zero()) continue;
                CHECK(residual_floor(P, a) >= 20);
                bool on_slope = false;
                for (const auto& s : np.segments) on_slope |= (-s.slope == Rational(a.start()));
                CHECK(on_slope);
            }
        }
    }
}

TEST_CASE("closest root") {
    auto F3 = Field::make(3);
    XPoly P = XPoly::linear(TPoly::constant(F3, 1), TPoly::t(F3)) *
              XPoly::linear(TPoly::constant(F3, 1), TPoly(F3, {1, 1})) *
              XPoly::linear(TPoly::t(F3), TPoly::constant(F3, 1));
    auto xi = rational_series(RatFn(TPoly(F3, {1, 0, 0, 0, 1}), TPoly(F3, {0, 0, 0, 1})), 40);  // T + T^-3
    auto cr = closest_root(P, xi);
    CHECK(cr.alpha.truncated(10) == LaurentSeries(F3, -1, {1}, 10));
    CHECK(cr.nu == 3);
    XPoly lin = XPoly::linear(TPoly::constant(F3, 1), TPoly::constant(F3, 2));
    auto cr2 = closest_root(lin, xi);
    CHECK(cr2.nu == -1);
    CHECK_THROWS_AS(closest_root(xp(F3, {{0, 1}, {}, {0, 1}}) , xi), Error);
}
