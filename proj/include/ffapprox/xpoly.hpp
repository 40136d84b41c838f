#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffapprox/laurent.hpp"
#include "ffapprox/tpoly.hpp"

namespace ffa {

/// P(X) = sum_i a_i(T) X^i over F_q[T].
class XPoly {
public:
    explicit XPoly(FieldPtr field) : field_(std::move(field)) {}
    XPoly(FieldPtr field, std::vector<TPoly> coeffs);

    static XPoly x(FieldPtr field);
    static XPoly constant(const TPoly& c);
    static XPoly monomial(const TPoly& c, int k);
    /// v X - u.
    static XPoly linear(const TPoly& v, const TPoly& u);

    const FieldPtr& field() const { return field_; }
    const std::vector<TPoly>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    /// Constant in X (including zero).
    bool is_constant() const { return c_.size() <= 1; }
    TPoly coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : TPoly(field_); }
    const TPoly& lead() const { return c_.back(); }

    /// h(P) = max deg a_i, so H(P) = q^{h(P)}; ZeroPolynomial for P = 0.
    int height_exponent() const;
    AbsValue height() const { return AbsValue::power(height_exponent()); }

    XPoly operator-() const;
    friend XPoly operator+(const XPoly& a, const XPoly& b);
    friend XPoly operator-(const XPoly& a, const XPoly& b);
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    XPoly times(const TPoly& c) const;
    XPoly scaled(Elem c) const;
    XPoly derivative() const;
    XPoly pow(unsigned k) const;

    /// Monic gcd of the coefficients in F_q[T].
    TPoly content() const;
    /// P / content, scaled so that the leading coefficient is monic.
    XPoly primitive_part() const;

    friend bool operator==(const XPoly& a, const XPoly& b) { return a.c_ == b.c_; }
    /// Canonical order: X-degree, then coefficients from the top (TPoly order).
    friend bool operator<(const XPoly& a, const XPoly& b);

    /// "(T)*X^3+(2*T)*X+1".
    std::string to_string() const;

private:
    void trim();

    FieldPtr field_;
    std::vector<TPoly> c_;
};

/// Horner evaluation. When the window is inconclusive and the series
/// carries a minimal polynomial dividing P, the result is a certified zero.
LaurentSeries xp_eval(const XPoly& P, const LaurentSeries& xi);
/// Evaluates, extending xi through its generator (doubling, within the budget)
/// until nu(P(xi)) is certified; xi is updated in place.
LaurentSeries xp_eval_certified(const XPoly& P, LaurentSeries& xi, const PrecisionBudget& budget = {});
/// The coefficients of the minimal polynomial attached to xi, if any.
std::optional<XPoly> series_minpoly(const LaurentSeries& xi);

/// Pseudo-remainder of A by B (B nonconstant in X or nonzero constant).
XPoly pseudo_remainder(const XPoly& A, const XPoly& B);
/// Whether B divides A in F_q(T)[X].
bool divides(const XPoly& B, const XPoly& A);
/// A / B in F_q[T][X]; InvalidArgument when the division is not exact there.
XPoly divexact(const XPoly& A, const XPoly& B);
/// Primitive gcd over F_q(T) normalized with monic leading coefficient.
XPoly xp_gcd(const XPoly& A, const XPoly& B);

struct SeparabilityFlags {
    bool separable = false;  // gcd(P, P') constant in X
    bool p_reduced = false;  // X-support gcd coprime to p
};
SeparabilityFlags xp_separability(const XPoly& P);
bool xp_is_separable(const XPoly& P);

/// P(X) = Q(X^{p^j}) with j maximal.
std::pair<int, XPoly> xp_insep_decompose(const XPoly& P);
/// Lambda_s applied to every coefficient (exponent p^j).
XPoly xp_coeff_cartier(const XPoly& P, int s, int j);
/// a_i(T) -> a_i(T)^p; then Q(xi^p) = P(xi)^p.
XPoly xp_frobenius_lift(const XPoly& P);
/// a_i(T) -> a_i(T^p) literally (agrees with the lift over prime fields).
XPoly xp_substitute_t_power(const XPoly& P);
/// a_i(T) -> a_i(T)^p, same X-degrees.
XPoly xp_coeff_pth_power(const XPoly& P);
/// X^i -> X^{p i}; Q(xi) = P(xi^p).
XPoly xp_expand_frobenius_X(const XPoly& P);

struct XFactorization {
    TPoly content;  // includes the unit
    std::vector<std::pair<XPoly, int>> factors;  // primitive, monic leading coefficient, sorted
};
/// Complete factorization over F_q(T) into primitive irreducibles.
/// BudgetExceeded when recombination would exceed `budget` subsets.
XFactorization xp_factor(const XPoly& P, std::uint64_t budget = 1U << 20);
bool xp_is_irreducible(const XPoly& P);

}  // namespace ffa
