#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffapprox/field.hpp"
#include "ffapprox/random.hpp"
#include "ffapprox/rational.hpp"

namespace ffa {

/// Element of F_q[T]; coefficients indexed by degree, leading coefficient
/// nonzero unless the polynomial is zero.
class TPoly {
public:
    explicit TPoly(FieldPtr field) : field_(std::move(field)) {}
    TPoly(FieldPtr field, std::vector<Elem> coeffs);

    static TPoly constant(FieldPtr field, Elem c);
    static TPoly monomial(FieldPtr field, Elem c, int degree);
    static TPoly t(FieldPtr field) { return monomial(std::move(field), 1, 1); }
    /// Uniform random polynomial of degree <= max_degree.
    static TPoly random(FieldPtr field, int max_degree, SplitMix64& rng);

    const FieldPtr& field() const { return field_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    /// -1 for the zero polynomial (stands for -infinity).
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Elem{0}; }
    Elem lead() const { return c_.empty() ? Elem{0} : c_.back(); }

    TPoly operator-() const;
    TPoly& operator+=(const TPoly& o);
    TPoly& operator-=(const TPoly& o);
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    TPoly scaled(Elem c) const;
    TPoly shifted(int k) const;  // times T^k, k >= 0

    TPoly monic() const;
    TPoly derivative() const;
    TPoly pow(std::uint64_t k) const;
    Elem evaluate(Elem x) const;
    /// a(T) -> a(T^k).
    TPoly substitute_power(int k) const;
    /// Coefficientwise Frobenius c -> c^p (the map a(T)^p = frob(a)(T^p) splits into this and T -> T^p).
    TPoly frobenius_coeffs() const;
    /// The Cartier component Lambda_s for exponent p^j: B = sum_s T^s Lambda_s(B)^{p^j}.
    TPoly cartier(int s, int j) const;

    /// |R| = q^{deg R}, |0| = 0.
    AbsValue abs() const { return is_zero() ? AbsValue::zero_value() : AbsValue::power(degree()); }

    friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }
    /// Total order used for canonical sorting: degree, then coefficients from the top.
    friend bool operator<(const TPoly& a, const TPoly& b);

    /// "T^3+2*T+1"; F_{p^f} coefficients in g, parenthesized when composite.
    std::string to_string() const;

private:
    void trim();
    void check(const TPoly& o) const;

    FieldPtr field_;
    std::vector<Elem> c_;
};

/// A = QB + R with deg R < deg B.
std::pair<TPoly, TPoly> divmod(const TPoly& a, const TPoly& b);
/// Monic greatest common divisor; BothZero when a = b = 0.
TPoly gcd(const TPoly& a, const TPoly& b);
/// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
struct Bezout {
    TPoly g, s, t;
};
Bezout xgcd(const TPoly& a, const TPoly& b);
/// a^e mod m.
TPoly powmod(const TPoly& a, std::uint64_t e, const TPoly& m);

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities (the unit is dropped), sorted canonically.
std::vector<std::pair<TPoly, int>> factor(const TPoly& a);

/// Canonical element of F_q(T): gcd(num, den) = 1, den monic.
class RatFn {
public:
    RatFn(TPoly num, TPoly den);
    explicit RatFn(const TPoly& num);

    const TPoly& num() const { return num_; }
    const TPoly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b);
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// |r| = q^{deg num - deg den}.
    AbsValue abs() const;
    std::string to_string() const;

private:
    TPoly num_, den_;
};

}  // namespace ffa
