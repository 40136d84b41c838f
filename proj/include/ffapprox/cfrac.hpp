#pragma once

#include <utility>
#include <vector>

#include "ffapprox/laurent.hpp"
#include "ffapprox/rational.hpp"
#include "ffapprox/xpoly.hpp"

namespace ffa {

struct CFExpansion {
    std::vector<TPoly> quotients;  // a_0, a_1, ...; deg a_k >= 1 for k >= 1
    /// (p_k, q_k) from p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2}.
    std::vector<std::pair<TPoly, TPoly>> raw;
    /// The same convergents scaled so that q_k is monic.
    std::vector<std::pair<TPoly, TPoly>> convergents;
    bool finite = false;  // the expansion terminated: xi is rational
};

/// First k+1 partial quotients (fewer when xi is rational with a shorter expansion).
CFExpansion cf_expand(const LaurentSeries& xi, int k, const PrecisionBudget& budget = {});
/// Builds the convergent lists from a list of quotients.
CFExpansion cf_from_quotients(std::vector<TPoly> quotients, bool finite);

/// For every k with q_{k+1} available: nu(q_k xi - p_k) == deg q_{k+1}. For the
/// last convergent of a finite expansion: q_k xi - p_k is certified zero.
std::vector<bool> cf_exactness_check(const LaurentSeries& xi, const CFExpansion& e, const PrecisionBudget& budget = {});

struct W1Estimate {
    Rational value;
    int k = -1;           // index of the witnessing convergent
    XPoly witness;        // q_k X - p_k
    bool degenerate = false;  // finite expansion
};
/// max over k with deg q_k >= 1 of deg q_{k+1} / h(q_k X - p_k), the exponent
/// witnessed by |q_k xi - p_k| = q^{-deg q_{k+1}}.
W1Estimate cf_w1_estimate(const CFExpansion& e);

}  // namespace ffa
