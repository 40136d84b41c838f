#include "ffapprox/roots.hpp"

#include <algorithm>
#include <limits>

#include "ffapprox/sources.hpp"

namespace ffa {

NewtonPolygon newton_polygon(const XPoly& P) {
    if (P.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Newton polygon of the zero polynomial");
    if (P.degree() < 1) throw Error(ErrorKind::ConstantPolynomial, "Newton polygon of a constant");
    std::vector<std::pair<int, std::int64_t>> hull;
    for (int i = 0; i <= P.degree(); ++i) {
        const auto& c = P.coeffs()[i];
        if (c.is_zero()) continue;
        const std::pair<int, std::int64_t> pt{i, -static_cast<std::int64_t>(c.degree())};
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            const std::int64_t cross = static_cast<std::int64_t>(b.first - a.first) * (pt.second - a.second) -
                                       (b.second - a.second) * static_cast<std::int64_t>(pt.first - a.first);
            if (cross > 0) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    NewtonPolygon np;
    np.vertices = hull;
    for (std::size_t k = 1; k < hull.size(); ++k) {
        const auto& [i0, v0] = hull[k - 1];
        const auto& [i1, v1] = hull[k];
        np.segments.push_back({Rational(v1 - v0, i1 - i0), i0, i1});
    }
    return np;
}

namespace {

using Seeds = std::vector<LaurentSeries>;

std::vector<std::vector<int>> binomials_mod(int n, int p) {
    std::vector<std::vector<int>> C(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        C[i].assign(static_cast<std::size_t>(i) + 1, 1);
        for (int k = 1; k < i; ++k) C[i][k] = (C[i - 1][k - 1] + C[i - 1][k]) % p;
    }
    return C;
}

// Hasse derivative P^[k] = sum_i C(i,k) c_i X^{i-k}.
XPoly hasse(const XPoly& P, int k, const std::vector<std::vector<int>>& C) {
    if (P.degree() < k) return XPoly(P.field());
    std::vector<TPoly> v;
    for (int i = k; i <= P.degree(); ++i) v.push_back(P.coeffs()[i].scaled(P.field()->from_int(C[i][k])));
    return XPoly(P.field(), std::move(v));
}

LaurentSeries make_exact(const LaurentSeries& s) {
    if (s.is_exact()) return s;
    return LaurentSeries(s.field(), s.start(), s.stored(), LaurentSeries::kExact);
}

struct NewtonStep {
    bool root = false;  // x is an exact root
    std::int64_t e = 0;  // nu(x - alpha)
    std::int64_t next = 0;  // nu(x' - alpha) lower bound after one step
    LaurentSeries h;  // -P(x)/P'(x), known below `next`
};

// Throws NewtonConditionFailed unless the Newton step from x is contracting.
NewtonStep newton_step(const XPoly& P, const LaurentSeries& x, std::int64_t target,
                       const std::vector<std::vector<int>>& C) {
    NewtonStep st{false, 0, 0, LaurentSeries(P.field())};
    const LaurentSeries px = xp_eval(P, x);
    if (px.is_certified_zero()) {
        st.root = true;
        return st;
    }
    const LaurentSeries dx = xp_eval(P.derivative(), x);
    if (dx.is_certified_zero()) throw Error(ErrorKind::NewtonConditionFailed, "derivative vanishes at approximation");
    const std::int64_t a = px.start();
    const std::int64_t d = dx.start();
    st.e = a - d;
    std::int64_t next = std::numeric_limits<std::int64_t>::max();
    for (int k = 2; k <= P.degree(); ++k) {
        const LaurentSeries hk = xp_eval(hasse(P, k, C), x);
        if (hk.is_certified_zero()) continue;
        const std::int64_t bound = hk.start() + static_cast<std::int64_t>(k - 1) * st.e;
        if (bound <= d) throw Error(ErrorKind::NewtonConditionFailed, "approximation outside the Newton ball");
        next = std::min(next, hk.start() + static_cast<std::int64_t>(k) * st.e - d);
    }
    st.next = std::min(next, std::max(target, st.e + 1));
    const std::int64_t cap = st.next - a;
    st.h = -(px * inverse(dx, cap));
    return st;
}

LaurentSeries lift_exact(const XPoly& P, LaurentSeries x, std::int64_t target) {
    const auto C = binomials_mod(std::max(P.degree(), 1), P.field()->p());
    for (;;) {
        NewtonStep st = newton_step(P, x, target, C);
        if (st.root || st.e >= target) return x;
        x = make_exact((x + st.h).truncated(st.next));
    }
}

// R(z T^-v + Y), scaled by a power of T into F_q[T][Y], primitive.
XPoly shift_root(const XPoly& R, Elem z, std::int64_t v) {
    const auto& F = R.field();
    const Field& f = *F;
    const int n = R.degree();
    const auto C = binomials_mod(n, f.p());
    std::vector<TPoly> out(static_cast<std::size_t>(n) + 1, TPoly(F));
    for (int i = 0; i <= n; ++i) {
        const auto& ci = R.coeffs()[i];
        if (ci.is_zero()) continue;
        for (int k = 0; k <= i; ++k) {
            const Elem b = f.from_int(C[i][k]);
            if (b == 0) continue;
            const Elem coef = f.mul(b, f.pow(z, static_cast<std::uint64_t>(i - k)));
            const std::int64_t tdeg = v > 0 ? v * (n - i + k) : -v * (i - k);
            out[k] += ci * TPoly::monomial(F, coef, static_cast<int>(tdeg));
        }
    }
    return XPoly(F, std::move(out)).primitive_part();
}

int residual_multiplicity(std::vector<Elem> r, Elem z, const Field& f) {
    int m = 0;
    for (;;) {
        // synthetic division by (Y - z)
        Elem acc = 0;
        std::vector<Elem> q(r.size() > 1 ? r.size() - 1 : 0);
        for (std::size_t k = r.size(); k-- > 0;) {
            acc = f.add(f.mul(acc, z), r[k]);
            if (k > 0) q[k - 1] = acc;
        }
        if (acc != 0 || r.size() <= 1) return m;
        ++m;
        r = std::move(q);
    }
}

void solve(const XPoly& S, XPoly R, const LaurentSeries& prefix, std::int64_t minval, int depth, std::int64_t prec,
           Seeds& out) {
    if (depth > 64) throw Error(ErrorKind::BudgetExceeded, "root descent depth exceeded");
    const auto& F = S.field();
    const Field& f = *F;
    if (R.degree() >= 1 && R.coeffs()[0].is_zero()) {
        out.push_back(prefix);
        R = divexact(R, XPoly::x(F));
    }
    if (R.degree() < 1) return;
    const NewtonPolygon np = newton_polygon(R);
    const auto C = binomials_mod(std::max(S.degree(), 1), f.p());
    for (const auto& seg : np.segments) {
        if (seg.slope.den() != 1) continue;
        const std::int64_t v = -seg.slope.num();
        if (v <= minval) continue;
        const std::int64_t base = -static_cast<std::int64_t>(R.coeffs()[seg.from].degree());
        std::vector<Elem> r(static_cast<std::size_t>(seg.length()) + 1, 0);
        for (int i = seg.from; i <= seg.to; ++i) {
            const auto& c = R.coeffs()[i];
            if (c.is_zero()) continue;
            if (-static_cast<std::int64_t>(c.degree()) == base - v * (i - seg.from)) r[i - seg.from] = c.lead();
        }
        for (int zi = 1; zi < f.q(); ++zi) {
            const auto z = static_cast<Elem>(zi);
            const int m = residual_multiplicity(r, z, f);
            if (m == 0) continue;
            const LaurentSeries x0 = prefix + LaurentSeries::monomial(F, z, v);
            if (m == 1) {
                try {
                    NewtonStep st = newton_step(S, x0, prec, C);
                    (void)st;
                    out.push_back(x0);
                    continue;
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::NewtonConditionFailed) throw;
                }
            }
            solve(S, shift_root(R, z, v), x0, v, depth + 1, prec, out);
        }
    }
}

XPoly sep_core(const XPoly& P) {
    const auto& F = P.field();
    const XPoly one = XPoly::constant(TPoly::constant(F, 1));
    if (P.degree() < 1) return one;
    const XPoly Pp = P.primitive_part();
    const XPoly D = Pp.derivative();
    if (D.is_zero()) {
        const auto [j, Q] = xp_insep_decompose(Pp);
        int pj = 1;
        for (int k = 0; k < j; ++k) pj *= F->p();
        XPoly g(F);
        for (int s = 0; s < pj; ++s) {
            const XPoly Gs = xp_coeff_cartier(Q, s, j);
            if (Gs.is_zero()) continue;
            g = g.is_zero() ? Gs.primitive_part() : xp_gcd(g, Gs);
            if (g.degree() < 1) return one;
        }
        return sep_core(g);
    }
    const XPoly gg = xp_gcd(Pp, D);
    const XPoly S0 = divexact(Pp, gg).primitive_part();
    if (gg.degree() < 1) return S0;
    const XPoly C = sep_core(gg);
    if (C.degree() < 1) return S0;
    return divexact(S0 * C, xp_gcd(S0, C)).primitive_part();
}

class AlgebraicSource final : public SeriesSource {
public:
    AlgebraicSource(XPoly minpoly, LaurentSeries seed, std::string name)
        : m_(std::move(minpoly)), seed_(make_exact(seed.without_source())), name_(std::move(name)) {}
    FieldPtr field() const override { return m_.field(); }
    LaurentSeries generate(std::int64_t prec) const override {
        const LaurentSeries x = lift_exact(m_, seed_, prec);
        return attach(x.truncated(prec));
    }
    std::optional<std::vector<TPoly>> minimal_polynomial() const override { return m_.coeffs(); }
    std::string describe() const override { return name_; }

private:
    XPoly m_;
    LaurentSeries seed_;
    std::string name_;
};

bool series_less(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.start() != b.start()) return a.start() < b.start();
    return a.stored() < b.stored();
}

BranchSelector branch_of(const LaurentSeries& r) {
    BranchSelector b;
    b.valuation = r.start();
    if (r.known_nonzero()) b.lead = r.stored().front();
    return b;
}

}  // namespace

std::string BranchSelector::to_string(const Field& f) const {
    std::string s = "val:" + std::to_string(valuation);
    if (lead) s += ",lead:" + f.format(*lead);
    return s;
}

LaurentSeries hensel_lift(const XPoly& P, const LaurentSeries& approx, std::int64_t target_prec) {
    const LaurentSeries x = lift_exact(P, make_exact(approx.without_source()), target_prec);
    if (xp_eval(P, x).is_certified_zero()) return x;
    return x.truncated(target_prec);
}

std::vector<LaurentSeries> base_roots(const XPoly& P, std::int64_t prec) {
    if (P.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
    if (P.degree() < 1) throw Error(ErrorKind::ConstantPolynomial, "roots of a polynomial constant in X");
    const auto& F = P.field();
    std::vector<LaurentSeries> roots;
    const XPoly S = sep_core(P);
    if (S.degree() < 1) return roots;
    for (const auto& [f, e] : xp_factor(S).factors) {
        if (f.degree() == 1) {
            roots.push_back(rational_series(RatFn(-f.coeffs()[0], f.coeffs()[1]), prec));
            continue;
        }
        Seeds seeds;
        solve(f, f, LaurentSeries::zero(F), std::numeric_limits<std::int64_t>::min(), 0, prec, seeds);
        for (const auto& seed : seeds) {
            const std::string name = "algebraic:poly=" + f.to_string() + ";branch=" + branch_of(seed).to_string(*F);
            roots.push_back(std::make_shared<AlgebraicSource>(f, seed, name)->generate(prec));
        }
    }
    std::sort(roots.begin(), roots.end(), series_less);
    return roots;
}

ClosestRoot closest_root(const XPoly& P, const LaurentSeries& xi, const PrecisionBudget& budget) {
    std::int64_t prec = std::max<std::int64_t>(xi.is_exact() ? 32 : xi.prec(), 32);
    auto roots = base_roots(P, prec);
    if (roots.empty()) throw Error(ErrorKind::NoBaseRoot, "polynomial has no root in F_q((1/T))");
    std::optional<ClosestRoot> best;
    LaurentSeries x = xi;
    for (auto& alpha : roots) {
        for (;;) {
            const LaurentSeries diff = x - alpha;
            if (diff.known_nonzero()) {
                if (!best || diff.start() > best->nu) best = ClosestRoot{alpha, diff.start()};
                break;
            }
            if (diff.is_certified_zero()) throw Error(ErrorKind::PreconditionViolated, "xi is a root of P");
            const std::int64_t target = 2 * std::min(x.prec(), alpha.prec());
            if (target > budget.max_terms) throw PrecisionError("closest root not separated", diff.prec());
            if (!x.is_exact()) x = x.extended(target, budget);
            if (!alpha.is_exact()) alpha = alpha.extended(target, budget);
        }
    }
    return *best;
}

LaurentSeries algebraic_series(const XPoly& minpoly, const BranchSelector& branch, std::int64_t prec) {
    if (!xp_is_irreducible(minpoly)) throw Error(ErrorKind::Reducible, "minimal polynomial is reducible");
    std::vector<LaurentSeries> hits;
    for (auto& r : base_roots(minpoly, prec)) {
        if (!r.known_nonzero() || r.start() != branch.valuation) continue;
        if (branch.lead && r.stored().front() != *branch.lead) continue;
        hits.push_back(r);
    }
    if (hits.empty()) throw Error(ErrorKind::NoSuchBranch, "no base root matches branch " + branch.to_string(*minpoly.field()));
    if (hits.size() > 1)
        throw Error(ErrorKind::NoSuchBranch, "branch " + branch.to_string(*minpoly.field()) + " is ambiguous");
    return hits.front();
}

}  // namespace ffa
