#include "ffapprox/reduce.hpp"

#include <limits>

namespace ffa {

namespace {

std::int64_t nu_of(const XPoly& P, LaurentSeries& xi, const PrecisionBudget& budget) {
    const LaurentSeries v = xp_eval_certified(P, xi, budget);
    if (v.is_certified_zero()) return std::numeric_limits<std::int64_t>::max();
    return v.start();
}

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

}  // namespace

bool has_separable_factor(const XPoly& P) {
    for (const auto& [f, e] : xp_factor(P).factors)
        if (!f.derivative().is_zero()) return true;
    return false;
}

SeparableReduction xp_separable_reduce(const XPoly& P, const LaurentSeries& xi_in, const PrecisionBudget& budget) {
    if (P.is_constant()) throw Error(ErrorKind::ConstantPolynomial, "reduction of a polynomial constant in X");
    LaurentSeries xi = xi_in;
    const int p = P.field()->p();
    SeparableReduction out{P, {}, 0, 0, Rational(0), false, false, false, false};
    out.nu_p = nu_of(P, xi, budget);
    if (out.nu_p == kInf) throw Error(ErrorKind::PreconditionViolated, "P(xi) = 0");
    XPoly cur = P;
    std::int64_t nu_cur = out.nu_p;
    while (!cur.is_constant() && !xp_separability(cur).p_reduced) {
        const auto [j, Q] = xp_insep_decompose(cur);
        int pj = 1;
        for (int k = 0; k < j; ++k) pj *= p;
        ReductionStep best{j, -1, XPoly(P.field()), kInf, nu_cur, 0, false};
        for (int s = 0; s < pj; ++s) {
            XPoly G = xp_coeff_cartier(Q, s, j);
            if (G.is_zero()) continue;
            const std::int64_t ng = nu_of(G, xi, budget);
            if (ng == kInf) continue;
            const std::int64_t val = -s + static_cast<std::int64_t>(pj) * ng;
            if (val == best.v) throw Error(ErrorKind::InvalidArgument, "tie in Cartier selection");
            if (val < best.v) {
                best.v = val;
                best.s = s;
                best.intermediate = std::move(G);
                best.nu_g = ng;
            }
        }
        if (best.s < 0) throw Error(ErrorKind::PreconditionViolated, "every Cartier image vanishes at xi");
        best.certificate = static_cast<std::int64_t>(pj) * best.nu_g == best.v + best.s && best.v == nu_cur;
        cur = best.intermediate;
        nu_cur = best.nu_g;
        out.trace.steps.push_back(best);
    }
    out.Q = cur;
    out.nu_q = nu_cur;
    out.p_reduced = !cur.is_constant() && xp_separability(cur).p_reduced;
    const int hp = P.height_exponent();
    const int hq = cur.height_exponent();
    out.degenerate_height = hq == 0;
    if (hp >= 1) {
        out.w = Rational(out.nu_p, hp);
        out.in_condition = out.w >= Rational(1) && hq >= 1;
    }
    // |Q(xi)| <= H(Q)^{-w}  <=>  nu(Q(xi)) h(P) >= nu(P(xi)) h(Q)
    out.bound_holds = hp >= 1 && static_cast<__int128>(out.nu_q) * hp >= static_cast<__int128>(out.nu_p) * hq;
    return out;
}

PrReduction xp_pr_reduce(const XPoly& P, const LaurentSeries& xi_in, const PrecisionBudget& budget) {
    if (P.is_constant()) throw Error(ErrorKind::ConstantPolynomial, "reduction of a polynomial constant in X");
    if (has_separable_factor(P)) throw Error(ErrorKind::PreconditionViolated, "P has a separable irreducible factor");
    LaurentSeries xi = xi_in;
    const int p = P.field()->p();
    PrReduction out{0, XPoly(P.field())};
    out.nu_p = nu_of(P, xi, budget);
    if (out.nu_p == kInf) throw Error(ErrorKind::PreconditionViolated, "P(xi) = 0");
    XPoly cur = P;
    for (;;) {
        // every factor is inseparable, so cur(X) = Q(X^p)
        std::vector<TPoly> qc;
        for (int i = 0; i <= cur.degree(); i += p) qc.push_back(cur.coeffs()[i]);
        const XPoly Q(P.field(), std::move(qc));
        std::int64_t best = kInf;
        XPoly A(P.field());
        std::int64_t nu_a = 0;
        for (int j = 0; j < p; ++j) {
            XPoly Aj = xp_coeff_cartier(Q, j, 1);
            if (Aj.is_zero()) continue;
            const std::int64_t a = nu_of(Aj, xi, budget);
            if (a == kInf) continue;
            const std::int64_t val = static_cast<std::int64_t>(p) * a - j;
            if (val < best) {
                best = val;
                A = std::move(Aj);
                nu_a = a;
            }
        }
        ++out.r;
        if (A.is_zero()) throw Error(ErrorKind::PreconditionViolated, "every Cartier image vanishes at xi");
        if (A.is_constant())
            throw Error(ErrorKind::ConstantCollapse, "selected Cartier image " + A.to_string() + " is constant in X");
        if (has_separable_factor(A)) {
            out.P0 = A;
            out.nu_p0 = nu_a;
            break;
        }
        cur = A;
    }
    std::int64_t pr = 1;
    for (int k = 0; k < out.r; ++k) pr *= p;
    out.separable_factor = true;
    out.degree_bound = pr * out.P0.degree() <= P.degree();
    out.value_bound = pr * out.nu_p0 > out.nu_p - (pr - 1);
    out.height_bound = pr * out.P0.height_exponent() <= P.height_exponent();
    out.r_bound = pr <= P.degree();
    return out;
}

}  // namespace ffa
