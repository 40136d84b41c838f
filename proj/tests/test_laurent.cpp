#include "doctest.h"

#include "ffapprox/laurent.hpp"
#include "ffapprox/sources.hpp"

using namespace ffa;

namespace {

// x = sum coeffs[k] T^{-(start+k)}, exact
LaurentSeries L(const FieldPtr& F, std::int64_t start, std::vector<Elem> c) {
    return LaurentSeries(F, start, std::move(c), LaurentSeries::kExact);
}

LaurentSeries random_window(const FieldPtr& F, SplitMix64& rng, std::int64_t lo, std::int64_t prec) {
    std::vector<Elem> c(static_cast<std::size_t>(prec - lo));
    for (auto& e : c) e = static_cast<Elem>(rng.below(F->q()));
    return LaurentSeries(F, lo, std::move(c), prec);
}

}  // namespace

TEST_CASE("valuation and absolute value") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    auto x = L(F2, -1, {1, 1, 1});
    CHECK(x.valuation() == -1);
    CHECK(x.abs() == AbsValue::power(1));
    CHECK(LaurentSeries::zero(F2).abs() == AbsValue::zero_value());
    CHECK_FALSE(LaurentSeries::zero(F2).valuation().has_value());
    auto y = L(F3, 3, {1, 0, 1});
    CHECK(y.valuation() == 3);
    CHECK(y.abs() == AbsValue::power(-3));
    LaurentSeries unknown(F2, 0, {0, 0, 0}, 3);
    CHECK_THROWS_AS(unknown.valuation(), PrecisionError);
}

TEST_CASE("arithmetic examples") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    auto one_minus = L(F2, 0, {1, 1});
    auto inv = inverse(one_minus, 20);
    CHECK(inv.prec() == 20);
    for (int n = 0; n < 20; ++n) CHECK(inv.coeff(n) == 1);
    auto a = random_series(F2, 9, 30);
    CHECK((a + a).stored().empty());
    CHECK((L(F2, 1, {1, 1}) + L(F2, 1, {1, 1})).is_certified_zero());
    auto prod = L(F3, 1, {1, 0, 1}) * L(F3, -1, {1});
    CHECK(prod == L(F3, 0, {1, 0, 1}));
}

TEST_CASE("precision propagation") {
    auto F3 = Field::make(3);
    LaurentSeries a(F3, 1, {1, 2, 0, 1}, 10);
    LaurentSeries b(F3, -2, {2, 1}, 5);
    CHECK((a + b).prec() == 5);
    CHECK((a * b).prec() == std::min<std::int64_t>(10 - 2, 5 + 1));
    CHECK(inverse(a, 100).prec() == 10 - 2);
    auto prod = a * inverse(a, 100);
    CHECK(prod.coeff(0) == 1);
    for (std::int64_t n = 1; n < prod.prec(); ++n) CHECK(prod.coeff(n) == 0);
}

TEST_CASE("fractional part and polynomial part") {
    auto F2 = Field::make(2);
    auto F4 = Field::make(2, 2);
    auto x = L(F2, -2, {1, 0, 1, 0, 0, 1});
    CHECK(frac_part_abs(x) == AbsValue::power(-3));
    CHECK(frac_part_abs(L(F2, -5, {1})) == AbsValue::zero_value());
    CHECK(frac_part_abs(L(F2, 1, {1})) == AbsValue::power(-1));
    auto [P, fr] = poly_part(x);
    CHECK(P == TPoly(F2, {1, 0, 1}));
    CHECK(fr == L(F2, 3, {1}));
    auto [P2, fr2] = poly_part(L(F2, 1, {1}));
    CHECK(P2.is_zero());
    const Elem g = F4->generator();
    auto [P3, fr3] = poly_part(L(F4, -1, {1, 0, 0, g}));
    CHECK(P3 == TPoly::t(F4));
    CHECK(fr3 == L(F4, 2, {g}));
}

TEST_CASE("Frobenius and p-th roots") {
    auto F3 = Field::make(3);
    auto F2 = Field::make(2);
    auto F4 = Field::make(2, 2);
    CHECK(frobenius(L(F3, 1, {1, 0, 1})) == L(F3, 3, {1, 0, 0, 0, 0, 0, 1}));
    CHECK(frobenius(LaurentSeries::zero(F3)).is_certified_zero());
    const Elem g = F4->generator();
    CHECK(frobenius(L(F4, 1, {g})) == L(F4, 2, {F4->add(g, 1)}));
    CHECK(pth_root(L(F2, 2, {1, 0, 1})) == L(F2, 1, {1, 1}));
    CHECK(pth_root(L(F3, 3, {1})) == L(F3, 1, {1}));
    try {
        (void)pth_root(L(F2, 1, {1}));
        FAIL("expected NotAPthPower");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAPthPower);
    }
    LaurentSeries w(F3, 2, {1, 2}, 11);
    CHECK(frobenius(w).prec() == 33);
    CHECK(pth_root(frobenius(w)) == w);
}

TEST_CASE("Cartier operator examples") {
    auto F2 = Field::make(2);
    auto x = L(F2, -1, {1, 1, 1, 1});  // T + 1 + T^-1 + T^-2
    CHECK(cartier(x, 0, 1) == L(F2, 0, {1, 1}));
    CHECK(cartier(x, 1, 1) == L(F2, 0, {1, 1}));
    for (auto F : {Field::make(2), Field::make(3)}) {
        for (int j = 1; j <= 2; ++j) {
            int P = 1;
            for (int k = 0; k < j; ++k) P *= F->p();
            for (int i = 0; i < P; ++i) {
                CHECK(cartier(L(F, P - i, {1}), i, j) == L(F, 1, {1}));
                CHECK(cartier(L(F, -(P + i), {1}), i, j) == L(F, -1, {1}));
            }
        }
    }
}

TEST_CASE("Cartier reconstruction and semilinearity on random windows") {
    SplitMix64 rng(17);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        for (int j = 1; j <= 2; ++j) {
            int P = 1;
            for (int k = 0; k < j; ++k) P *= F->p();
            for (int t = 0; t < 40; ++t) {
                const auto lo = static_cast<std::int64_t>(rng.range(-6, 4));
                auto x = random_window(F, rng, lo, lo + 10 + static_cast<std::int64_t>(rng.below(30)));
                LaurentSeries back = LaurentSeries::zero(F);
                for (int i = 0; i < P; ++i) {
                    LaurentSeries part = cartier(x, i, j);
                    for (int k = 0; k < j; ++k) part = frobenius(part);
                    back = back + part.shifted(i);
                }
                CHECK(back.prec() <= x.prec());
                CHECK(back == x.truncated(back.prec()));
                TPoly B = TPoly::random(F, 4, rng);
                auto C = random_window(F, rng, lo, x.prec());
                LaurentSeries Bp = LaurentSeries::from_tpoly(B);
                for (int k = 0; k < j; ++k) Bp = frobenius(Bp);
                const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(P)));
                auto lhs = cartier(x + Bp * C, i, j);
                auto rhs = cartier(x, i, j) + cartier(C, i, j).times(B);
                const auto w = std::min(lhs.prec(), rhs.prec());
                CHECK(lhs.truncated(w) == rhs.truncated(w));
            }
        }
    }
}

TEST_CASE("rational expansions") {
    auto F3 = Field::make(3);
    auto T = TPoly::t(F3);
    auto r = LaurentSeries::from_rational(RatFn(T, T * T + TPoly::constant(F3, 1)), 8);
    CHECK(r == LaurentSeries(F3, 1, {1, 0, 2, 0, 1, 0, 2}, 8));
    CHECK(LaurentSeries::from_rational(RatFn(TPoly::constant(F3, 1), T), 5) == LaurentSeries(F3, 1, {1}, 5));
    auto t2 = LaurentSeries::from_rational(RatFn(T * T), 5);
    CHECK(t2.is_exact());
    auto ext = rational_series(RatFn(T, T * T + TPoly::constant(F3, 1)), 8).extended(40);
    CHECK(ext.prec() == 40);
    CHECK(ext.coeff(37) == 1);
}

TEST_CASE("named series") {
    auto F3 = Field::make(3);
    auto m = mahler_series(F3, 100);
    for (std::int64_t n = 1; n < 100; ++n) CHECK(m.coeff(n) == ((n == 1 || n == 3 || n == 9 || n == 27 || n == 81) ? 1 : 0));
    auto f = factorial_series(Field::make(2), 130);
    CHECK(f.coeff(1) == 1);
    CHECK(f.coeff(2) == 1);
    CHECK(f.coeff(6) == 1);
    CHECK(f.coeff(24) == 1);
    CHECK(f.coeff(120) == 1);
    CHECK(f.coeff(121) == 0);
    auto a = random_series(F3, 42, 50);
    auto b = random_series(F3, 42, 80);
    CHECK(b.truncated(50) == a);
    CHECK(a.start() >= 1);
}

TEST_CASE("budget policies") {
    auto F2 = Field::make(2);
    auto m = mahler_series(F2, 10);
    PrecisionBudget strict{64, PrecisionBudget::OnExhaust::Error};
    CHECK_THROWS_AS(m.extended(100, strict), Error);
    PrecisionBudget lax{64, PrecisionBudget::OnExhaust::ReturnUnknown};
    CHECK(m.extended(100, lax).prec() == 64);
}

TEST_CASE("ultrametric inequality on random certified-nonzero windows") {
    SplitMix64 rng(23);
    auto F3 = Field::make(3);
    for (int t = 0; t < 300; ++t) {
        auto a = random_window(F3, rng, rng.range(-3, 3), 20);
        auto b = random_window(F3, rng, rng.range(-3, 3), 20);
        if (!a.known_nonzero() || !b.known_nonzero()) continue;
        auto s = a + b;
        if (s.known_nonzero()) CHECK(s.abs() <= std::max(a.abs(), b.abs()));
        if (a.abs() != b.abs()) CHECK(s.abs() == std::max(a.abs(), b.abs()));
        CHECK((a * b).abs() == a.abs() * b.abs());
    }
}

TEST_CASE("printing") {
    auto F3 = Field::make(3);
    CHECK(L(F3, -2, {1, 0, 1, 0, 0, 2}).to_string() == "T^2+1+2*T^-3");
    CHECK(LaurentSeries(F3, 1, {1}, 4).to_string() == "T^-1+O(T^-4)");
}
