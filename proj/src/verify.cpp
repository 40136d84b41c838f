#include "ffapprox/verify.hpp"

#include <algorithm>

#include "ffapprox/cfrac.hpp"
#include "ffapprox/random.hpp"
#include "ffapprox/reduce.hpp"
#include "ffapprox/roots.hpp"
#include "ffapprox/sources.hpp"

namespace ffa {

bool all_gated_ok(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (r.gated && !r.ok()) return false;
    return true;
}

namespace {

/// Coefficientwise agreement wherever both are known.
bool agree(const LaurentSeries& a, const LaurentSeries& b) {
    const std::int64_t lo = std::min(a.start(), b.start());
    std::int64_t hi = std::min(a.prec(), b.prec());
    if (hi == LaurentSeries::kExact)
        hi = std::max(a.start() + static_cast<std::int64_t>(a.stored().size()),
                      b.start() + static_cast<std::int64_t>(b.stored().size()));
    for (std::int64_t k = lo; k < hi; ++k)
        if (a.coeff(k) != b.coeff(k)) return false;
    return true;
}

XPoly random_xpoly(const FieldPtr& F, int n, int h, SplitMix64& rng) {
    std::vector<TPoly> c;
    for (int i = 0; i <= n; ++i) c.push_back(TPoly::random(F, h, rng));
    return XPoly(F, std::move(c));
}

LaurentSeries frob_pow(LaurentSeries x, int j) {
    for (int k = 0; k < j; ++k) x = frobenius(x);
    return x;
}

std::string show(const XPoly& P, const LaurentSeries& xi) { return "P=" + P.to_string() + " xi=" + xi.to_string(10); }

}  // namespace

std::vector<VerificationReport> verify_identity_suite(std::uint64_t seed, const SuiteCounts& counts) {
    SplitMix64 rng(seed);
    std::vector<VerificationReport> out;

    VerificationReport cart;
    cart.check = "identities.cartier_reconstruction";
    for (const auto& F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        const int p = F->p();
        for (int j = 1; j <= 2; ++j) {
            int pj = 1;
            for (int k = 0; k < j; ++k) pj *= p;
            for (int t = 0; t < counts.cartier; ++t) {
                const LaurentSeries x = random_series(F, rng.next(), 48).shifted(rng.range(0, 6));
                LaurentSeries sum = LaurentSeries::zero(F);
                for (int i = 0; i < pj; ++i)
                    sum = sum + frob_pow(cartier(x, i, j), j).times(TPoly::monomial(F, 1, i));
                cart.record(agree(sum, x), [&] {
                    return F->spec_string() + " j=" + std::to_string(j) + " x=" + x.to_string(10);
                });
            }
        }
    }
    out.push_back(cart);

    VerificationReport lift;
    lift.check = "identities.frobenius_lift";
    VerificationReport pth;
    pth.check = "identities.coeff_pth_power";
    VerificationReport expand;
    expand.check = "identities.expand_frobenius_x";
    for (int t = 0; t < counts.frobenius; ++t) {
        const FieldPtr F = t % 3 == 0 ? Field::make(2, 2) : Field::make(2 + t % 2);
        const XPoly P = random_xpoly(F, static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(0, 4)), rng);
        if (P.is_zero()) {
            --t;
            continue;
        }
        const LaurentSeries xi = random_series(F, rng.next(), 64);
        const int p = F->p();
        const LaurentSeries xip = frobenius(xi);
        const LaurentSeries Pp = frobenius(xp_eval(P, xi));
        const XPoly Q = xp_frobenius_lift(P);
        lift.record(agree(xp_eval(Q, xip), Pp) && Q.height_exponent() == p * P.height_exponent(),
                    [&] { return show(P, xi); });
        const XPoly C = xp_coeff_pth_power(P);
        pth.record(agree(xp_eval(C, xip), Pp) && C.height_exponent() == p * P.height_exponent(),
                   [&] { return show(P, xi); });
        const XPoly E = xp_expand_frobenius_X(P);
        expand.record(agree(xp_eval(E, xi), xp_eval(P, xip)) && E.degree() == p * P.degree(),
                      [&] { return show(P, xi); });
    }
    out.push_back(lift);
    out.push_back(pth);
    out.push_back(expand);

    VerificationReport gauss;
    gauss.check = "identities.gauss_multiplicativity";
    for (int t = 0; t < counts.gauss; ++t) {
        const FieldPtr F = Field::make(t % 2 == 0 ? 2 : 3);
        const XPoly A = random_xpoly(F, static_cast<int>(rng.range(0, 4)), static_cast<int>(rng.range(0, 5)), rng);
        const XPoly B = random_xpoly(F, static_cast<int>(rng.range(0, 4)), static_cast<int>(rng.range(0, 5)), rng);
        if (A.is_zero() || B.is_zero()) {
            --t;
            continue;
        }
        gauss.record((A * B).height_exponent() == A.height_exponent() + B.height_exponent(),
                     [&] { return "A=" + A.to_string() + " B=" + B.to_string(); });
    }
    out.push_back(gauss);
    return out;
}

namespace {

/// sum_s T^s G_s(X)^{[p^j]} where [p^j] raises coefficients only: P(xi) = sum_s T^s G_s(xi)^{p^j}.
XPoly cartop_instance(const std::vector<XPoly>& G, int j) {
    const FieldPtr& F = G.front().field();
    XPoly P(F);
    for (std::size_t s = 0; s < G.size(); ++s) {
        XPoly g = G[s];
        for (int k = 0; k < j; ++k) g = xp_expand_frobenius_X(xp_coeff_pth_power(g));
        P = P + g.times(TPoly::monomial(F, 1, static_cast<int>(s)));
    }
    return P;
}

/// A good degree-1 approximation q_k X - p_k of xi, k in [1, 4].
XPoly convergent_form(const LaurentSeries& xi, SplitMix64& rng) {
    const auto e = cf_expand(xi, 5);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(4, e.convergents.size() - 1));
    return XPoly::linear(e.convergents[k].second, e.convergents[k].first);
}

}  // namespace

std::vector<VerificationReport> verify_reduction_suite(std::uint64_t seed, const SuiteCounts& counts) {
    SplitMix64 rng(seed);
    std::vector<VerificationReport> out;

    VerificationReport worked;
    worked.check = "reductions.worked_instances";
    {
        const auto F2 = Field::make(2);
        const XPoly P(F2, {TPoly(F2, {0, 1, 1}), TPoly(F2), TPoly(F2, {1})});  // X^2 + T^2 + T
        const XPoly target(F2, {TPoly(F2, {0, 1}), TPoly(F2, {1})});             // X + T
        const auto inv_t = rational_series(RatFn(TPoly(F2, {1}), TPoly(F2, {0, 1})), 64);
        const auto r = xp_separable_reduce(P, inv_t);
        worked.record(r.Q == target && r.trace.certified(), [&] { return "cartop at 1/T gave " + r.Q.to_string(); });
        const auto one_plus = rational_series(RatFn(TPoly(F2, {1, 1}), TPoly(F2, {0, 1})), 64);
        const auto pr = xp_pr_reduce(P, one_plus);
        worked.record(pr.r == 1 && pr.P0 == target && pr.all(),
                      [&] { return "pr at 1+1/T gave r=" + std::to_string(pr.r) + " P0=" + pr.P0.to_string(); });
    }
    out.push_back(worked);

    VerificationReport cartop;
    cartop.check = "reductions.cartop";
    int in_condition = 0;
    for (int attempt = 0; in_condition < counts.cartop && attempt < counts.cartop * 20; ++attempt) {
        const FieldPtr F = Field::make(attempt % 2 == 0 ? 2 : 3);
        const int p = F->p();
        const int j = p == 2 ? static_cast<int>(rng.range(1, 2)) : 1;
        LaurentSeries xi = random_series(F, rng.next(), 256);
        std::vector<XPoly> G;
        const int terms = static_cast<int>(rng.range(1, p == 2 && j == 2 ? 4 : p));
        for (int s = 0; s < terms; ++s) {
            XPoly g = convergent_form(xi, rng);
            if (rng.below(3) == 0) g = g * convergent_form(xi, rng);
            if (rng.below(3) == 0) g = g + XPoly::constant(TPoly::random(F, 0, rng));
            G.push_back(g);
        }
        const XPoly P = cartop_instance(G, j);
        if (P.is_constant() || xp_eval_certified(P, xi).is_certified_zero()) continue;
        SeparableReduction r = xp_separable_reduce(P, xi);
        if (!r.in_condition) {
            ++cartop.quarantined;
            continue;
        }
        ++in_condition;
        LaurentSeries x = xi;
        const auto vq = xp_eval_certified(r.Q, x);
        const bool ok = r.trace.certified() && (r.Q.is_constant() || r.p_reduced) && vq.known_nonzero() &&
                        vq.start() == r.nu_q && r.bound_holds;
        cartop.record(ok, [&] { return show(P, xi) + " Q=" + r.Q.to_string(); });
    }
    cartop.measured["in_condition"] = std::to_string(in_condition);
    out.push_back(cartop);

    VerificationReport pr;
    pr.check = "reductions.pr_lemma";
    int collapsed = 0;
    for (int attempt = 0; pr.instances < counts.pr && attempt < counts.pr * 50; ++attempt) {
        const FieldPtr F = Field::make(attempt % 2 == 0 ? 2 : 3);
        const int p = F->p();
        // product of one or two irreducible inseparable factors Q(X^p)
        XPoly P = XPoly::constant(TPoly::constant(F, 1));
        const int nf = static_cast<int>(rng.range(1, 2));
        bool good = true;
        for (int f = 0; f < nf && good; ++f) {
            const int dq = static_cast<int>(rng.range(1, 2));
            std::vector<TPoly> c(static_cast<std::size_t>(dq * p + 1), TPoly(F));
            for (int i = 0; i <= dq; ++i) c[static_cast<std::size_t>(i * p)] = TPoly::random(F, 3, rng);
            XPoly Fac(F, c);
            if (Fac.degree() < p || !xp_is_irreducible(Fac)) good = false;
            P = P * Fac;
        }
        if (!good) continue;
        LaurentSeries xi = random_series(F, rng.next(), 256);
        if (rng.below(2)) xi = xi + LaurentSeries::from_tpoly(TPoly::random(F, 1, rng));
        if (xp_eval_certified(P, xi).is_certified_zero()) continue;
        try {
            const PrReduction r = xp_pr_reduce(P, xi);
            pr.record(r.all(), [&] { return show(P, xi) + " P0=" + r.P0.to_string(); });
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ConstantCollapse) throw;
            ++collapsed;
            ++pr.quarantined;
            if (pr.notes.size() < 5) pr.notes.push_back("ConstantCollapse: " + show(P, xi));
        }
    }
    pr.measured["constant_collapse"] = std::to_string(collapsed);
    out.push_back(pr);
    return out;
}

namespace {

struct Split {
    XPoly P;
    std::vector<RatFn> roots;
    LaurentSeries xi;
};

/// P = prod (v_i X - u_i) with distinct roots u_i / v_i, and a xi that is
/// either close to the first root or unrelated.
Split split_instance(const FieldPtr& F, int n, SplitMix64& rng) {
    for (;;) {
        std::vector<RatFn> roots;
        XPoly P = XPoly::constant(TPoly::constant(F, 1));
        for (int i = 0; i < n; ++i) {
            TPoly den = TPoly::random(F, 1, rng);
            if (den.is_zero()) den = TPoly::constant(F, 1);
            const RatFn r(TPoly::random(F, 2, rng), den);
            roots.push_back(r);
            P = P * XPoly::linear(r.den(), r.num());
        }
        if (!xp_is_separable(P)) continue;
        LaurentSeries xi = random_series(F, rng.next(), 160);
        if (rng.below(2)) {
            const auto k = static_cast<std::int64_t>(rng.range(0, 6));
            xi = LaurentSeries::from_rational(roots[0], 160) + xi.shifted(-k);
        }
        if (xp_eval_certified(P, xi).is_certified_zero()) continue;
        return {P, roots, xi};
    }
}

std::int64_t nu_diff(const LaurentSeries& xi, const RatFn& r) {
    return *(xi - LaurentSeries::from_rational(r, xi.prec())).valuation();
}

Rational median(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) * Rational(1, 2);
}

}  // namespace

std::vector<VerificationReport> verify_inequality_suite(const std::vector<NamedSeries>& corpus,
                                                        const std::vector<EnumerationWindow>& windows,
                                                        std::uint64_t seed, const SuiteCounts& counts,
                                                        const EstimatorOptions& opt) {
    SplitMix64 rng(seed);
    std::vector<VerificationReport> out;

    VerificationReport upper;
    upper.check = "inequalities.wstar_le_w";
    VerificationReport lower;
    lower.check = "inequalities.wstar_ge_w_minus_n_plus_1.trend";
    lower.gated = false;
    for (const auto& [name, xi] : corpus) {
        for (const auto& w : windows) {
            const auto a = estimate_wn(xi, w, opt);
            const auto b = estimate_wn_star(xi, w, opt);
            const std::string where = name + " n=" + std::to_string(w.n) + " h<=" + std::to_string(w.h_max);
            // level by level: both sides range over the same polynomials of height h
            bool ok = a.skipped == 0 && b.skipped == 0;
            for (const auto& lb : b.per_level)
                for (const auto& la : a.per_level)
                    if (la.h == lb.h && lb.value > la.value) ok = false;
            if (b.value && (!a.value || *b.value > *a.value)) ok = false;
            upper.record(ok, [&] {
                return where + ": w*=" + (b.value ? b.value->to_string() : "none") +
                       " w=" + (a.value ? a.value->to_string() : "none");
            });
            if (a.value) {
                const Rational tol(w.n + 1, w.h_max);
                const Rational floor = *a.value - Rational(w.n - 1) - tol;
                lower.record(b.value && *b.value >= floor, [&] {
                    return where + ": w*=" + (b.value ? b.value->to_string() : "none") +
                           " below w-n+1-tol=" + floor.to_string();
                });
            }
        }
    }
    out.push_back(upper);
    out.push_back(lower);

    VerificationReport closest;
    closest.check = "inequalities.closest_root";
    for (int t = 0; t < counts.closest; ++t) {
        const FieldPtr F = Field::make(t % 2 == 0 ? 2 : 3);
        const int n = 2 + t % 2;
        Split s = split_instance(F, n, rng);
        LaurentSeries x = s.xi;
        const std::int64_t nu_p = *xp_eval_certified(s.P, x).valuation();
        const ClosestRoot cr = closest_root(s.P, s.xi);
        // |xi - alpha| <= |P(xi)| H(P)^{n-2}
        closest.record(cr.nu >= nu_p - static_cast<std::int64_t>(n - 2) * s.P.height_exponent(),
                       [&] { return show(s.P, s.xi) + " nu(xi-alpha)=" + std::to_string(cr.nu); });
    }
    out.push_back(closest);

    VerificationReport est;
    est.check = "inequalities.split_product_bound";
    VerificationReport gu2;
    gu2.check = "inequalities.split_gauss_ratio";
    std::int64_t worst = 0;
    std::int64_t over_n2 = 0;
    for (int t = 0; t < counts.split; ++t) {
        const FieldPtr F = Field::make(t % 2 == 0 ? 2 : 3);
        const int m = 2 + t % 3;
        Split s = split_instance(F, m, rng);
        std::vector<std::int64_t> nu;
        for (const auto& r : s.roots) nu.push_back(nu_diff(s.xi, r));
        const std::int64_t c = std::max<std::int64_t>(0, -s.xi.valuation_lower_bound());
        const std::int64_t rhs = static_cast<std::int64_t>(m) * c + s.P.height_exponent();
        bool ok = true;
        for (unsigned S = 1; S < (1U << m); ++S) {
            std::int64_t lhs = s.P.lead().degree();
            for (int i = 0; i < m; ++i)
                if (S >> i & 1U) lhs -= nu[i];
            if (lhs > rhs) ok = false;
        }
        est.record(ok, [&] { return show(s.P, s.xi); });
        // log_q of |a_m| prod max(|xi - beta_i|, q^-r) / H(P); every factor
        // max(|xi - beta|, q^-r) / max(1, |beta|) lies in [q^{-r-c}, q^c]
        bool within = true;
        bool within_n2 = true;
        for (int r : {0, 1, 3}) {
            std::int64_t L = s.P.lead().degree() - s.P.height_exponent();
            for (int i = 0; i < m; ++i) L += std::max<std::int64_t>(-nu[i], -r);
            const std::int64_t a = L < 0 ? -L : L;
            worst = std::max(worst, a);
            if (a > static_cast<std::int64_t>(m) * (r + c)) within = false;
            if (a > static_cast<std::int64_t>(m) * m) within_n2 = false;
        }
        gu2.record(within, [&] { return show(s.P, s.xi); });
        if (!within_n2) {
            ++over_n2;
            if (gu2.notes.size() < 5) gu2.notes.push_back("exceeds n^2: " + show(s.P, s.xi));
        }
    }
    gu2.measured["max_abs_log_ratio"] = std::to_string(worst);
    gu2.measured["bound"] = "n(r + log_q max(1,|xi|))";
    gu2.measured["exceeding_n2"] = std::to_string(over_n2);
    out.push_back(est);
    out.push_back(gu2);

    VerificationReport stat;
    stat.check = "inequalities.metric_median.stat";
    stat.gated = false;
    {
        const auto F2 = Field::make(2);
        std::vector<Rational> vals;
        std::string list;
        for (int s = 1; s <= counts.statistical; ++s) {
            const auto e = estimate_wn(random_series(F2, static_cast<std::uint64_t>(s), 64), {2, 5, 5, Filter::All}, opt);
            if (!e.value) continue;
            vals.push_back(*e.value);
            list += (list.empty() ? "" : ",") + e.value->to_string();
        }
        const Rational med = vals.empty() ? Rational(0) : median(vals);
        stat.record(!vals.empty() && med >= Rational(8, 5) && med <= Rational(13, 5),
                    [&] { return "median " + med.to_string() + " outside [8/5, 13/5]"; });
        stat.measured["median"] = med.to_string();
        stat.measured["values"] = list;
    }
    out.push_back(stat);
    return out;
}

namespace {

std::int64_t nu_eval(const XPoly& P, LaurentSeries xi) { return *xp_eval_certified(P, xi).valuation(); }

/// min_i nu(frac(R xi^i)) over 1 <= i <= n, or nullopt when every fractional part is zero.
std::optional<std::int64_t> lambda_nu(const TPoly& R, const LaurentSeries& xi, int n) {
    std::optional<std::int64_t> m;
    LaurentSeries p = LaurentSeries::from_tpoly(TPoly::constant(xi.field(), 1));
    for (int i = 1; i <= n; ++i) {
        p = p * xi;
        const auto fr = poly_part(p.times(R)).second;
        if (fr.known_nonzero()) m = std::min(m.value_or(fr.start()), fr.start());
    }
    return m;
}

}  // namespace

std::vector<VerificationReport> verify_frobenius_suite(const std::vector<NamedSeries>& corpus,
                                                       const std::vector<EnumerationWindow>& windows,
                                                       std::uint64_t seed, const SuiteCounts& counts,
                                                       const EstimatorOptions& opt) {
    SplitMix64 rng(seed);
    // the corpus first, then seeded random series until the counts are met
    std::vector<LaurentSeries> pool;
    for (const auto& c : corpus) pool.push_back(c.xi);
    const auto next_xi = [&](int t) {
        if (t < static_cast<int>(pool.size())) return pool[t];
        return random_series(Field::make(t % 2 == 0 ? 2 : 3), rng.next(), 256);
    };
    const auto window_for = [&](int t) {
        if (!windows.empty() && t < static_cast<int>(pool.size())) return windows[t % windows.size()];
        return EnumerationWindow{1 + t % 2, 1, 2 + t % 2, Filter::All};
    };

    VerificationReport lift;
    lift.check = "frobenius.w_witness_lift";
    VerificationReport hat;
    hat.check = "frobenius.what_witness_power";
    for (int t = 0; t < counts.frobenius; ++t) {
        const LaurentSeries xi = next_xi(t);
        const EnumerationWindow w = window_for(t);
        const int p = xi.field()->p();
        const LaurentSeries xip = frobenius_series(xi);
        const auto e = estimate_wn(xi, w, opt);
        if (!e.witness) continue;
        const XPoly Q = xp_frobenius_lift(*e.witness);
        lift.record(nu_eval(Q, xip) == p * e.witness_nu && Q.height_exponent() == p * e.witness->height_exponent(),
                    [&] { return show(*e.witness, xi); });
        if (t < counts.transport) {
            const auto eh = estimate_what(xi, w, false, opt);
            if (!eh.witness) continue;
            const XPoly C = xp_coeff_pth_power(*eh.witness);
            hat.record(nu_eval(C, xip) == p * eh.witness_nu &&
                           C.height_exponent() == p * eh.witness->height_exponent(),
                       [&] { return show(*eh.witness, xi); });
        }
    }
    std::vector<VerificationReport> out{lift, hat};

    VerificationReport pull;
    pull.check = "frobenius.pullback_reduction";
    for (int t = 0; pull.instances < counts.transport && t < counts.transport * 5; ++t) {
        const LaurentSeries xi = next_xi(t);
        const EnumerationWindow w = window_for(t);
        const LaurentSeries xip = frobenius_series(xi);
        EnumerationWindow wp = w;
        wp.h_max = std::min(w.h_max + 1, 4);
        const auto e = estimate_wn(xip, wp, opt);
        if (!e.witness || e.witness->is_constant()) continue;
        const XPoly R = xp_expand_frobenius_X(*e.witness);
        const SeparableReduction r = xp_separable_reduce(R, xi);
        if (!r.in_condition || r.Q.is_constant()) {
            ++pull.quarantined;
            continue;
        }
        const Rational orig(e.witness_nu, e.witness->height_exponent());
        const Rational got(nu_eval(r.Q, xi), r.Q.height_exponent());
        pull.record(got >= orig && r.Q.degree() <= w.n, [&] {
            return show(*e.witness, xip) + " reduced " + r.Q.to_string() + " ratio " + got.to_string() + " < " +
                   orig.to_string();
        });
    }
    out.push_back(pull);

    VerificationReport lam;
    lam.check = "frobenius.lambda_cartier";
    for (int t = 0; lam.instances < counts.transport && t < counts.transport * 5; ++t) {
        const LaurentSeries xi = next_xi(t);
        const int n = 1 + t % 2;
        const int p = xi.field()->p();
        const LaurentSeries xip = frobenius_series(xi);
        const auto e = estimate_lambda(xip, {n, 1, 2 * p, Filter::All}, opt);
        if (!e.witness_r) continue;
        const TPoly& R = *e.witness_r;
        const Rational target(e.witness_nu, R.degree());
        bool any = false, ok = true;
        std::string detail;
        for (int j = 0; j < p; ++j) {
            const TPoly Qj = R.cartier(j, 1);
            if (Qj.degree() < 1) continue;
            const auto m = lambda_nu(Qj, xi, n);
            if (!m) continue;
            any = true;
            const Rational r(*m, Qj.degree());
            if (r < target) {
                ok = false;
                detail = "j=" + std::to_string(j) + " ratio " + r.to_string();
            }
        }
        if (!any) {
            ++lam.quarantined;
            continue;
        }
        lam.record(ok, [&] { return "R=" + R.to_string() + " target " + target.to_string() + " " + detail; });
    }
    out.push_back(lam);
    return out;
}

}  // namespace ffa
