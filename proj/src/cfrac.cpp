#include "ffapprox/cfrac.hpp"

#include <algorithm>

#include "ffapprox/sources.hpp"

namespace ffa {

namespace {

std::optional<RatFn> rational_value(const LaurentSeries& xi) {
    if (xi.is_exact()) return exact_to_ratfn(xi);
    if (auto m = series_minpoly(xi); m && m->degree() == 1) return RatFn(-m->coeffs()[0], m->coeffs()[1]);
    return std::nullopt;
}

}  // namespace

CFExpansion cf_from_quotients(std::vector<TPoly> quotients, bool finite) {
    CFExpansion e;
    e.finite = finite;
    if (quotients.empty()) return e;
    const auto& F = quotients.front().field();
    TPoly p2 = TPoly::constant(F, 1), q2(F);      // p_{-1}, q_{-1}
    TPoly p1 = quotients[0], q1 = TPoly::constant(F, 1);  // p_0, q_0
    e.raw.emplace_back(p1, q1);
    for (std::size_t k = 1; k < quotients.size(); ++k) {
        TPoly p = quotients[k] * p1 + p2;
        TPoly q = quotients[k] * q1 + q2;
        p2 = std::move(p1);
        q2 = std::move(q1);
        p1 = p;
        q1 = q;
        e.raw.emplace_back(std::move(p), std::move(q));
    }
    for (const auto& [p, q] : e.raw) {
        const Elem u = F->inv(q.lead());
        e.convergents.emplace_back(p.scaled(u), q.scaled(u));
    }
    e.quotients = std::move(quotients);
    return e;
}

CFExpansion cf_expand(const LaurentSeries& xi, int k, const PrecisionBudget& budget) {
    if (auto r = rational_value(xi)) {
        std::vector<TPoly> qs;
        TPoly a = r->num(), b = r->den();
        while (!b.is_zero() && static_cast<int>(qs.size()) <= k) {
            auto [q, rem] = divmod(a, b);
            qs.push_back(q);
            a = std::move(b);
            b = std::move(rem);
        }
        return cf_from_quotients(std::move(qs), b.is_zero());
    }
    std::int64_t prec = std::max<std::int64_t>(xi.prec(), 64);
    for (;;) {
        std::vector<TPoly> qs;
        try {
            LaurentSeries x = xi.extended(prec, budget);
            for (int i = 0; i <= k; ++i) {
                auto [a, frac] = poly_part(x);
                qs.push_back(a);
                if (i == k) break;
                x = inverse(frac, 0);
            }
            return cf_from_quotients(std::move(qs), false);
        } catch (const PrecisionError& e) {
            if (prec >= budget.max_terms)
                throw PrecisionError("continued fraction stopped after " + std::to_string(qs.size()) + " quotients",
                                     prec);
            prec = std::min(prec * 2, budget.max_terms);
        }
    }
}

std::vector<bool> cf_exactness_check(const LaurentSeries& xi, const CFExpansion& e, const PrecisionBudget& budget) {
    std::vector<bool> out;
    LaurentSeries x = xi;
    const std::size_t n = e.convergents.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& [p, q] = e.convergents[k];
        const XPoly lin = XPoly::linear(q, p);
        const bool last = k + 1 == n;
        if (last && !e.finite) break;
        LaurentSeries v = LaurentSeries::zero(xi.field());
        try {
            v = xp_eval_certified(lin, x, budget);
        } catch (const PrecisionError&) {
            out.push_back(false);
            continue;
        }
        if (last) {
            out.push_back(v.is_certified_zero());
        } else {
            out.push_back(v.known_nonzero() && v.start() == e.convergents[k + 1].second.degree());
        }
    }
    return out;
}

W1Estimate cf_w1_estimate(const CFExpansion& e) {
    if (e.quotients.size() < 3) throw Error(ErrorKind::TooFewQuotients, "need at least 3 partial quotients");
    const auto& F = e.quotients.front().field();
    W1Estimate best{Rational(0), -1, XPoly(F), e.finite};
    for (std::size_t k = 0; k + 1 < e.convergents.size(); ++k) {
        const auto& [p, q] = e.convergents[k];
        if (q.degree() < 1) continue;
        const XPoly lin = XPoly::linear(q, p);
        const int h = lin.height_exponent();
        const Rational ratio(e.convergents[k + 1].second.degree(), h);
        // ties go to the larger height
        if (best.k < 0 || ratio >= best.value) {
            best.value = ratio;
            best.k = static_cast<int>(k);
            best.witness = lin;
        }
    }
    return best;
}

}  // namespace ffa
