#pragma once

#include <cstdint>
#include <vector>

#include "ffapprox/laurent.hpp"
#include "ffapprox/rational.hpp"
#include "ffapprox/xpoly.hpp"

namespace ffa {

struct ReductionStep {
    int j = 0;                 // P_step(X) = Q(X^{p^j})
    int s = 0;                 // selected Cartier index
    XPoly intermediate;        // G_s
    std::int64_t v = 0;        // min_s (-s + p^j nu(G_s(xi)))
    std::int64_t nu_step = 0;  // nu(P_step(xi)), computed directly
    std::int64_t nu_g = 0;     // nu(G_s(xi))
    bool certificate = false;  // p^j nu(G_s(xi)) == v + s and v == nu_step
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    bool certified() const {
        for (const auto& s : steps)
            if (!s.certificate) return false;
        return true;
    }
};

struct SeparableReduction {
    XPoly Q;
    ReductionTrace trace;
    std::int64_t nu_p = 0;  // nu(P(xi))
    std::int64_t nu_q = 0;  // nu(Q(xi))
    Rational w;              // nu(P(xi)) / h(P), when h(P) >= 1
    bool degenerate_height = false;  // H(Q) = 1
    bool in_condition = false;       // h(P) >= 1, w >= 1, H(Q) > 1
    bool bound_holds = false;        // |Q(xi)| <= H(Q)^{-w}
    bool p_reduced = false;
};

/// Repeated decompose -> Cartier -> select until the polynomial is p-reduced
/// (or constant in X). Requires P(xi) != 0.
SeparableReduction xp_separable_reduce(const XPoly& P, const LaurentSeries& xi, const PrecisionBudget& budget = {});

struct PrReduction {
    int r = 0;
    XPoly P0;
    std::int64_t nu_p = 0;
    std::int64_t nu_p0 = 0;
    bool separable_factor = false;  // (1)
    bool degree_bound = false;      // (2) p^r deg P0 <= deg P
    bool value_bound = false;       // (3) 0 < |P0(xi)|^{p^r} < q^{p^r - 1} |P(xi)|
    bool height_bound = false;      // (4) H(P0)^{p^r} <= H(P)
    bool r_bound = false;           // p^r <= deg P
    bool all() const { return separable_factor && degree_bound && value_bound && height_bound && r_bound; }
};

/// Requires every irreducible factor of P to be inseparable (PreconditionViolated
/// otherwise) and P(xi) != 0; ConstantCollapse when the selected image is constant in X.
PrReduction xp_pr_reduce(const XPoly& P, const LaurentSeries& xi, const PrecisionBudget& budget = {});

bool has_separable_factor(const XPoly& P);

}  // namespace ffa
