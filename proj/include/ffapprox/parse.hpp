#pragma once

#include <string_view>
#include <vector>

#include "ffapprox/laurent.hpp"
#include "ffapprox/roots.hpp"
#include "ffapprox/tpoly.hpp"
#include "ffapprox/xpoly.hpp"

namespace ffa {

// Expressions are sums of products of factors: integers, g (the field
// generator), T, X, and parenthesized expressions, each optionally raised to
// an exponent. `2*T^2+1`, `(g+1)*T`, `(T)*X^3+(2*T)*X+1`, `T^-1+T^-3`.

/// Coefficients (low to high) of a polynomial in g over F_p: `g^2+g+1`.
std::vector<int> parse_modulus(std::string_view text, int p);
Elem parse_elem(const FieldPtr& F, std::string_view text);
TPoly parse_tpoly(const FieldPtr& F, std::string_view text);
/// `(T)/(T^2+1)` or a polynomial.
RatFn parse_ratfn(const FieldPtr& F, std::string_view text);
XPoly parse_xpoly(const FieldPtr& F, std::string_view text);
/// A finite Laurent polynomial in T (negative exponents allowed), as an exact series.
LaurentSeries parse_laurent(const FieldPtr& F, std::string_view text);
/// `val:1` or `val:0,lead:2`.
BranchSelector parse_branch(const FieldPtr& F, std::string_view text);

}  // namespace ffa
