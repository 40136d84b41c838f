#include "doctest.h"

#include "ffapprox/field.hpp"
#include "ffapprox/tpoly.hpp"

using namespace ffa;

namespace {

TPoly P(const FieldPtr& F, std::vector<Elem> c) { return TPoly(F, std::move(c)); }

// brute force: a has no monic divisor of degree 1..deg/2
bool irreducible_by_search(const TPoly& a) {
    const auto& F = a.field();
    const int d = a.degree();
    for (int k = 1; 2 * k <= d; ++k) {
        std::vector<Elem> c(static_cast<std::size_t>(k) + 1, 0);
        c[k] = 1;
        for (;;) {
            if (divmod(a, TPoly(F, c)).second.is_zero()) return false;
            int i = 0;
            while (i < k && ++c[i] == F->q()) c[i++] = 0;
            if (i == k) break;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("prime field inverses and powers") {
    auto F3 = Field::make(3);
    CHECK(F3->inv(2) == 2);
    auto F2 = Field::make(2);
    for (int k = 0; k < 20; ++k) CHECK(F2->pow(1, k) == 1);
    CHECK_THROWS_AS(F3->inv(0), Error);
}

TEST_CASE("F4 multiplication and p-th roots") {
    auto F4 = Field::make(2, 2, {1, 1, 1});
    const Elem g = F4->generator();
    const Elem g1 = F4->add(g, 1);
    CHECK(F4->mul(g, g) == g1);
    CHECK(F4->pth_root(g1) == g);
    CHECK(F4->pth_root(0) == 0);
    CHECK(F4->format(g1) == "g+1");
    CHECK(F4->spec_string() == "p=2,f=2,modulus=g^2+g+1");
}

TEST_CASE("reducible modulus rejected") {
    CHECK_THROWS_AS(Field::make(2, 2, {1, 0, 1}), Error);
    CHECK_THROWS_AS(Field::make(4), Error);
}

TEST_CASE("x^q = x and root(x)^p = x on every small field") {
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 8}, {3, 1}, {3, 2}, {3, 5},
                                                          {5, 1}, {5, 2}, {5, 3}, {7, 2}, {11, 2}, {13, 1}}) {
        auto F = Field::make(p, f);
        for (int x = 0; x < F->q(); ++x) {
            const auto e = static_cast<Elem>(x);
            CHECK(F->pow(e, static_cast<std::uint64_t>(F->q())) == e);
            CHECK(F->pow(F->pth_root(e), static_cast<std::uint64_t>(p)) == e);
            if (x) CHECK(F->mul(e, F->inv(e)) == 1);
        }
    }
}

TEST_CASE("mixed fields raise SpecMismatch") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    try {
        (void)(FqElement(F2, 1) + FqElement(F3, 1));
        FAIL("expected SpecMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpecMismatch);
    }
}

TEST_CASE("absolute values and divmod examples") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    CHECK(P(F2, {0, 1, 0, 1}).abs() == AbsValue::power(3));
    CHECK(TPoly(F2).abs() == AbsValue::zero_value());
    CHECK(P(F3, {2}).abs() == AbsValue::power(0));
    auto [q1, r1] = divmod(P(F3, {1, 0, 1}), P(F3, {0, 1}));
    CHECK(q1 == P(F3, {0, 1}));
    CHECK(r1 == P(F3, {1}));
    auto [q2, r2] = divmod(P(F2, {0, 1, 1}), P(F2, {1, 1}));
    CHECK(q2 == P(F2, {0, 1}));
    CHECK(r2.is_zero());
    CHECK_THROWS_AS(divmod(P(F2, {1}), TPoly(F2)), Error);
}

TEST_CASE("gcd examples") {
    auto F2 = Field::make(2);
    auto F3 = Field::make(3);
    CHECK(gcd(P(F2, {0, 1, 1}), P(F2, {0, 1})) == P(F2, {0, 1}));
    CHECK(gcd(P(F3, {1, 2}), TPoly(F3)) == P(F3, {2, 1}));
    // T^2+2 = (T+1)(T+2) over F_3
    CHECK(gcd(P(F3, {2, 0, 1}), P(F3, {1, 1})) == P(F3, {1, 1}));
    CHECK_THROWS_AS(gcd(TPoly(F3), TPoly(F3)), Error);
}

TEST_CASE("random round trips: divmod, xgcd, multiplicativity") {
    SplitMix64 rng(11);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        for (int t = 0; t < 1000; ++t) {
            TPoly a = TPoly::random(F, static_cast<int>(rng.below(9)), rng);
            TPoly b = TPoly::random(F, static_cast<int>(rng.below(6)), rng);
            CHECK((a * b).abs() == a.abs() * b.abs());
            if (b.is_zero()) continue;
            auto [q, r] = divmod(a, b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
            if (a.is_zero()) continue;
            Bezout bz = xgcd(a, b);
            CHECK(bz.s * a + bz.t * b == bz.g);
            CHECK(bz.g == gcd(a, b));
        }
    }
}

TEST_CASE("factorization reproduces the input with irreducible factors") {
    SplitMix64 rng(5);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2), Field::make(5)}) {
        for (int t = 0; t < 60; ++t) {
            TPoly a = TPoly::random(F, 1 + static_cast<int>(rng.below(8)), rng);
            if (t % 3 == 0) a = a * a * TPoly::random(F, 2, rng);
            if (a.degree() < 1) continue;
            TPoly prod = TPoly::constant(F, a.lead());
            for (const auto& [f, e] : factor(a)) {
                CHECK(f.lead() == 1);
                CHECK(irreducible_by_search(f));
                prod = prod * f.pow(static_cast<std::uint64_t>(e));
            }
            CHECK(prod == a);
        }
    }
}

TEST_CASE("p-th power inputs factor correctly") {
    auto F2 = Field::make(2);
    TPoly t = TPoly::t(F2);
    TPoly a = (t * t + t + TPoly::constant(F2, 1)).pow(4) * t.pow(3);
    auto fz = factor(a);
    REQUIRE(fz.size() == 2);
    CHECK(fz[0].first == t);
    CHECK(fz[0].second == 3);
    CHECK(fz[1].second == 4);
}

TEST_CASE("Cartier components of polynomials") {
    auto F2 = Field::make(2);
    TPoly a = P(F2, {0, 1, 1});  // T^2 + T
    CHECK(a.cartier(0, 1) == P(F2, {0, 1}));
    CHECK(a.cartier(1, 1) == P(F2, {1}));
    SplitMix64 rng(3);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        for (int j = 1; j <= 2; ++j) {
            int pj = 1;
            for (int k = 0; k < j; ++k) pj *= F->p();
            for (int t = 0; t < 50; ++t) {
                TPoly b = TPoly::random(F, 12, rng);
                TPoly back(F);
                for (int s = 0; s < pj; ++s) {
                    TPoly l = b.cartier(s, j);
                    for (int k = 0; k < j; ++k) l = l.frobenius_coeffs().substitute_power(F->p());
                    back += l.shifted(s);
                }
                CHECK(back == b);
            }
        }
    }
}

TEST_CASE("rational functions are canonical") {
    auto F3 = Field::make(3);
    RatFn r(P(F3, {0, 2, 2}), P(F3, {0, 2}));  // (2T^2+2T)/(2T) = T+1
    CHECK(r.is_polynomial());
    CHECK(r.num() == P(F3, {1, 1}));
    RatFn s(P(F3, {1}), P(F3, {0, 2}));
    CHECK(s.den() == P(F3, {0, 1}));
    CHECK(s.num() == P(F3, {2}));
    CHECK(s.abs() == AbsValue::power(-1));
    CHECK((s * RatFn(P(F3, {0, 2}))) == RatFn(P(F3, {1})));
}

TEST_CASE("polynomial formatting") {
    auto F3 = Field::make(3);
    CHECK(P(F3, {1, 2, 0, 1}).to_string() == "T^3+2*T+1");
    auto F4 = Field::make(2, 2);
    const Elem g = F4->generator();
    CHECK(TPoly(F4, {g, F4->add(g, 1)}).to_string() == "(g+1)*T+(g)");
}
