#include "ffapprox/exponents.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "ffapprox/linalg.hpp"
#include "ffapprox/roots.hpp"

namespace ffa {

std::string filter_name(Filter f) {
    switch (f) {
        case Filter::All: return "all";
        case Filter::Separable: return "separable";
        case Filter::Irreducible: return "irreducible";
    }
    return "all";
}

Filter parse_filter(const std::string& s) {
    if (s == "all") return Filter::All;
    if (s == "separable" || s == "sep") return Filter::Separable;
    if (s == "irreducible") return Filter::Irreducible;
    throw Error(ErrorKind::InvalidArgument, "unknown filter '" + s + "'");
}

std::string kind_name(ExponentKind k) {
    switch (k) {
        case ExponentKind::W: return "w";
        case ExponentKind::WSep: return "w_sep";
        case ExponentKind::WStar: return "w_star";
        case ExponentKind::WHat: return "w_hat";
        case ExponentKind::WHatSep: return "w_hat_sep";
        case ExponentKind::Lambda: return "lambda";
        case ExponentKind::LambdaHat: return "lambda_hat";
    }
    return "w";
}

std::string ExponentEstimate::witness_string() const {
    if (witness_r) return witness_r->to_string();
    if (!witness) return "";
    if (witness_alpha) return witness->to_string() + " @ " + witness_alpha->to_string(12);
    return witness->to_string();
}

void VerificationReport::record(bool ok, const std::function<std::string()>& describe) {
    ++instances;
    if (ok)
        ++passed;
    else
        counterexamples.push_back(describe());
}

// ---- enumeration ------------------------------------------------------

std::uint64_t enumeration_size(const Field& F, const EnumerationWindow& w) {
    const int digits = (w.n + 1) * (w.h_max + 1);
    std::uint64_t s = 1;
    for (int i = 0; i < digits; ++i) {
        if (s > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(F.q()))
            return std::numeric_limits<std::uint64_t>::max();
        s *= static_cast<std::uint64_t>(F.q());
    }
    return s;
}

XPoly xpoly_from_key(const FieldPtr& F, int n, int h_max, std::uint64_t key) {
    const auto q = static_cast<std::uint64_t>(F->q());
    std::vector<TPoly> c;
    for (int i = 0; i <= n; ++i) {
        std::vector<Elem> a(static_cast<std::size_t>(h_max + 1));
        for (int e = 0; e <= h_max; ++e) {
            a[e] = static_cast<Elem>(key % q);
            key /= q;
        }
        c.emplace_back(F, std::move(a));
    }
    return XPoly(F, std::move(c));
}

std::uint64_t xpoly_key(const XPoly& P, int n, int h_max) {
    const auto q = static_cast<std::uint64_t>(P.field()->q());
    std::uint64_t key = 0;
    for (int i = n; i >= 0; --i)
        for (int e = h_max; e >= 0; --e) key = key * q + P.coeff(i).coeff(e);
    return key;
}

bool key_less(const XPoly& a, const XPoly& b, int n) {
    const int top = std::max(a.height_exponent(), b.height_exponent());
    for (int i = n; i >= 0; --i) {
        const TPoly ca = a.coeff(i), cb = b.coeff(i);
        for (int e = top; e >= 0; --e)
            if (ca.coeff(e) != cb.coeff(e)) return ca.coeff(e) < cb.coeff(e);
    }
    return false;
}

bool passes_filter(const XPoly& P, Filter f) {
    switch (f) {
        case Filter::All: return true;
        case Filter::Separable: return !P.is_constant() && xp_is_separable(P);
        case Filter::Irreducible: return !P.is_constant() && xp_is_irreducible(P);
    }
    return true;
}

void enum_xpolys(const FieldPtr& F, const EnumerationWindow& w, const std::function<void(const XPoly&)>& fn,
                 std::uint64_t budget, int shard, int nshards) {
    const std::uint64_t total = enumeration_size(*F, w);
    if (total == std::numeric_limits<std::uint64_t>::max() || total - 1 > budget)
        throw Error(ErrorKind::BudgetExceeded, "enumeration window exceeds budget");
    const std::uint64_t count = total - 1;
    const std::uint64_t lo = 1 + count * static_cast<std::uint64_t>(shard) / static_cast<std::uint64_t>(nshards);
    const std::uint64_t hi = 1 + count * static_cast<std::uint64_t>(shard + 1) / static_cast<std::uint64_t>(nshards);
    for (std::uint64_t key = lo; key < hi; ++key) {
        XPoly P = xpoly_from_key(F, w.n, w.h_max, key);
        if (passes_filter(P, w.filter)) fn(P);
    }
}

namespace {

constexpr std::int64_t kNoIndex = std::numeric_limits<std::int64_t>::min();

/// Runs fn(0..count-1) on up to `workers` threads; results land in fixed slots.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < count;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

/// xi^0 .. xi^n, all known at least up to `known` (or exact).
struct Powers {
    FieldPtr F;
    std::vector<LaurentSeries> pw;
    std::optional<XPoly> minpoly;
    std::int64_t known = 0;   // min prec over i >= 1
    std::int64_t lowest = 0;  // min over i of the first possibly nonzero index

    Elem coeff(int i, std::int64_t k) const { return pw[i].coeff(k); }
};

Powers make_powers(const LaurentSeries& xi, int n) {
    Powers P{xi.field(), {}, std::nullopt, LaurentSeries::kExact, 0};
    if (auto m = series_minpoly(xi); m && m->degree() >= 1) P.minpoly = m->primitive_part();
    P.pw.push_back(LaurentSeries::from_tpoly(TPoly::constant(xi.field(), 1)));
    const LaurentSeries base = xi.without_source();
    for (int i = 1; i <= n; ++i) {
        P.pw.push_back(P.pw.back() * base);
        P.known = std::min(P.known, P.pw.back().prec());
    }
    for (const auto& s : P.pw) P.lowest = std::min(P.lowest, s.start());
    return P;
}

/// Precision schedule: start, x2, x4, never past four times the term budget.
std::vector<LaurentSeries> precision_ladder(const LaurentSeries& xi, std::int64_t start, const PrecisionBudget& budget) {
    PrecisionBudget wide = budget;
    wide.max_terms = budget.max_terms * 4;
    std::vector<LaurentSeries> out;
    for (int step = 0; step < 3; ++step) {
        const std::int64_t target = std::min(start << step, wide.max_terms);
        if (xi.prec() >= target) {
            out.push_back(xi);
        } else {
            try {
                out.push_back(xi.extended(target, wide));
            } catch (const PrecisionError&) {
                out.push_back(xi);
            }
        }
        if (out.back().is_exact() || target == wide.max_terms) break;
    }
    return out;
}

/// Result of scanning V_N = {v : rows(k) . v = 0 for k < N} for N = kstart, kstart+1, ...
struct Scan {
    bool conclusive = false;
    std::int64_t kstart = 0;
    std::int64_t M = kNoIndex;    // last N where the condition still held
    std::vector<Subspace> V;      // V[N - kstart] for N in [kstart, M + 1]
    const Subspace& at(std::int64_t N) const { return V[static_cast<std::size_t>(N - kstart)]; }
};

/// `fails(V)` is monotone: once true it stays true as V shrinks. Rows k are
/// available for k < K.
Scan scan(const FieldPtr& F, int dim, std::int64_t kstart, std::int64_t K,
          const std::function<std::vector<Vec>(std::int64_t)>& rows, const std::function<bool(const Subspace&)>& fails) {
    Scan s;
    s.kstart = kstart;
    Subspace V = Subspace::full(F, dim);
    for (std::int64_t N = kstart;; ++N) {
        s.V.push_back(V);
        if (fails(V)) {
            s.M = N - 1;
            s.conclusive = true;
            return s;
        }
        if (N >= K) return s;
        for (const auto& r : rows(N)) V.constrain(r);
    }
}

/// True when v has a nonzero product with one of the rows.
bool hits(const Field& F, const std::vector<Vec>& rows, const Vec& v) {
    for (const auto& r : rows)
        if (dot(F, r, v) != 0) return true;
    return false;
}

}  // namespace

namespace {

struct BudgetHit {};

/// Coordinates a_{i,e} of polynomials with deg_X <= n and coefficient degrees <= h.
struct XSpace {
    FieldPtr F;
    int n, h;

    int dim() const { return (n + 1) * (h + 1); }
    int idx(int i, int e) const { return i * (h + 1) + e; }

    XPoly poly(const Vec& v) const {
        std::vector<TPoly> c;
        for (int i = 0; i <= n; ++i) c.emplace_back(F, std::vector<Elem>(v.begin() + idx(i, 0), v.begin() + idx(i, h) + 1));
        return XPoly(F, std::move(c));
    }
    Vec vec(const XPoly& P) const {
        Vec v(dim(), 0);
        for (int i = 0; i <= std::min(n, P.degree()); ++i)
            for (int e = 0; e <= std::min(h, P.coeff(i).degree()); ++e) v[idx(i, e)] = P.coeff(i).coeff(e);
        return v;
    }
    /// The coefficient of T^-k in sum a_{i,e} T^e xi^i, as a linear form.
    std::vector<Vec> rows(const Powers& pw, std::int64_t k) const {
        Vec r(dim(), 0);
        for (int i = 0; i <= n; ++i)
            for (int e = 0; e <= h; ++e) r[idx(i, e)] = pw.coeff(i, k + e);
        return {std::move(r)};
    }
    /// Polynomials of the space vanishing at xi: multiples m * C of the minimal polynomial.
    Echelon zeros(const Powers& pw) const {
        Echelon Z(F, dim());
        if (!pw.minpoly) return Z;
        const XPoly& m = *pw.minpoly;
        for (int a = 0; a + m.degree() <= n; ++a)
            for (int e = 0; e + m.height_exponent() <= h; ++e)
                Z.insert(vec(XPoly::monomial(TPoly::monomial(F, 1, e), a) * m));
        return Z;
    }
    /// All coefficient degrees <= h - 1.
    bool lower(const Vec& v) const {
        for (int i = 0; i <= n; ++i)
            if (v[idx(i, h)] != 0) return false;
        return true;
    }
};

std::int64_t row_limit(const Powers& pw, int h, const PrecisionBudget& budget) {
    if (pw.known == LaurentSeries::kExact) return budget.max_terms * 4;
    return pw.known - h;
}

/// Canonical-least element of V passing `valid`, or nullopt.
template <class Obj, class Make, class Less>
std::optional<Obj> least(const Subspace& V, const std::function<bool(const Vec&)>& valid, Make make, Less less,
                         std::uint64_t& budget) {
    if (V.size() > budget) throw BudgetHit{};
    budget -= V.size();
    std::optional<Obj> best;
    V.for_each([&](const Vec& v) {
        if (!valid(v)) return true;
        Obj o = make(v);
        if (!best || less(o, *best)) best = std::move(o);
        return true;
    });
    return best;
}

struct Outcome {
    enum Status { Ok, None, Inconclusive, Skipped };
    Outcome(Status s = None, Rational r = {}, std::int64_t v = 0) : st(s), ratio(r), nu(v) {}

    Status st;
    Rational ratio;
    std::int64_t nu;
    std::optional<XPoly> P;
    std::optional<TPoly> R;
    std::optional<LaurentSeries> alpha;
};

std::int64_t start_precision(const LaurentSeries& xi, int n, int h_max) {
    const std::int64_t c = std::max<std::int64_t>(0, -xi.valuation_lower_bound());
    return 2 * static_cast<std::int64_t>(n + 1) * (h_max + 1) + 2 * h_max + 32 + 2 * n * c;
}

/// Evaluates every level over the precision ladder; levels still inconclusive
/// at the top rung (or over the enumeration budget) come back as Skipped.
std::vector<Outcome> run_levels(const LaurentSeries& xi, int n, const std::vector<int>& levels, std::int64_t start,
                                const EstimatorOptions& opt,
                                const std::function<Outcome(const Powers&, const LaurentSeries&, int)>& fn) {
    std::vector<Outcome> out(levels.size());
    for (auto& o : out) o.st = Outcome::Inconclusive;
    for (const LaurentSeries& rung : precision_ladder(xi, start, opt.budget)) {
        std::vector<int> pending;
        for (std::size_t j = 0; j < levels.size(); ++j)
            if (out[j].st == Outcome::Inconclusive) pending.push_back(static_cast<int>(j));
        if (pending.empty()) break;
        const Powers pw = make_powers(rung, n);
        parallel_for(static_cast<int>(pending.size()), opt.workers, [&](int t) {
            const int j = pending[t];
            try {
                out[j] = fn(pw, rung, levels[j]);
            } catch (const BudgetHit&) {
                out[j] = Outcome{Outcome::Skipped};
            } catch (const PrecisionError&) {
                out[j] = Outcome{Outcome::Inconclusive};
            }
        });
    }
    for (auto& o : out)
        if (o.st == Outcome::Inconclusive) o.st = Outcome::Skipped;
    return out;
}

std::vector<int> level_range(const EnumerationWindow& w) {
    if (w.h_min < 1 || w.h_max < w.h_min || w.n < 1)
        throw Error(ErrorKind::InvalidArgument, "window needs n >= 1 and 1 <= h_min <= h_max");
    std::vector<int> v;
    for (int h = w.h_min; h <= w.h_max; ++h) v.push_back(h);
    return v;
}

}  // namespace

namespace {

bool xless(int n, const XPoly& a, const XPoly& b) { return key_less(a, b, n); }

/// Exact-height level of w: max nu(P(xi)) over P with h(P) = h, P(xi) != 0, P passing the filter.
Outcome level_w(const Powers& pw, int n, int h, Filter filter, std::uint64_t budget, const PrecisionBudget& pb) {
    const XSpace S{pw.F, n, h};
    const Echelon Z = S.zeros(pw);
    const auto lower = [&](const Vec& v) { return S.lower(v); };
    const Scan sc = scan(
        pw.F, S.dim(), pw.lowest - h, row_limit(pw, h, pb), [&](std::int64_t k) { return S.rows(pw, k); },
        [&](const Subspace& V) { return V.contained_in(Z) || V.all_of(lower); });
    if (!sc.conclusive) return Outcome{Outcome::Inconclusive};
    const auto make = [&](const Vec& v) { return S.poly(v); };
    const auto less = [&](const XPoly& a, const XPoly& b) { return xless(n, a, b); };
    for (std::int64_t N = sc.M; N >= sc.kstart; --N) {
        const auto rows = S.rows(pw, N);
        std::function<bool(const Vec&)> valid;
        if (filter == Filter::All)
            valid = [&](const Vec& v) { return !S.lower(v) && !Z.contains(v); };
        else
            valid = [&](const Vec& v) {
                return !S.lower(v) && hits(*pw.F, rows, v) && passes_filter(S.poly(v), filter);
            };
        if (auto P = least<XPoly>(sc.at(N), valid, make, less, budget)) {
            Outcome o{Outcome::Ok, Rational(N, h), N};
            o.P = std::move(P);
            return o;
        }
    }
    return Outcome{Outcome::None};
}

/// Exact-height level of w*: irreducible P of height h and base-field roots alpha.
Outcome level_wstar(const Powers& pw, const LaurentSeries& xi, int n, int h, std::uint64_t budget,
                    const PrecisionBudget& pb) {
    const XSpace S{pw.F, n, h};
    const Echelon Z = S.zeros(pw);
    const auto lower = [&](const Vec& v) { return S.lower(v); };
    const Scan sc = scan(
        pw.F, S.dim(), pw.lowest - h, row_limit(pw, h, pb), [&](std::int64_t k) { return S.rows(pw, k); },
        [&](const Subspace& V) { return V.contained_in(Z) || V.all_of(lower); });
    if (!sc.conclusive) return Outcome{Outcome::Inconclusive};
    // |xi - alpha| >= |P(xi)| / (max(1,|xi|)^n H(P)), so nu(xi - alpha) <= nu(P(xi)) + h + n c
    const std::int64_t c = std::max<std::int64_t>(0, -xi.valuation_lower_bound());
    Outcome best{Outcome::None};
    for (std::int64_t N = sc.M; N >= sc.kstart; --N) {
        if (best.st == Outcome::Ok && Rational(N + n * c, h) < best.ratio) break;
        const auto rows = S.rows(pw, N);
        const Subspace& V = sc.at(N);
        if (V.size() > budget) throw BudgetHit{};
        budget -= V.size();
        V.for_each([&](const Vec& v) {
            if (S.lower(v) || !hits(*pw.F, rows, v)) return true;
            XPoly P = S.poly(v);
            if (P.is_constant() || !xp_is_irreducible(P)) return true;
            const auto consider = [&](std::int64_t d, LaurentSeries alpha) {
                const Rational r = Rational(d, h) - Rational(1);
                if (best.st == Outcome::Ok && (r < best.ratio || (r == best.ratio && !key_less(P, *best.P, n))))
                    return;
                best = Outcome{Outcome::Ok, r, d};
                best.P = P;
                best.alpha = std::move(alpha);
            };
            const std::int64_t cap = N + h + n * c + 16;
            if (P.degree() == 1) {
                // xi - alpha = P(xi) / a_1
                const RatFn a(-P.coeff(0), P.coeff(1));
                consider(N + P.coeff(1).degree(), LaurentSeries::from_rational(a, cap));
                return true;
            }
            if (xi.prec() < cap) throw PrecisionError("root distance beyond known window", xi.prec());
            for (auto& alpha : base_roots(P, cap)) {
                const LaurentSeries diff = xi.truncated(cap) - alpha;
                const auto d = diff.valuation();
                if (!d) continue;
                consider(*d, std::move(alpha));
            }
            return true;
        });
    }
    return best;
}

/// Level h of w-hat: max nu(P(xi)) over P != 0 with h(P) <= h and P(xi) != 0.
Outcome level_what(const Powers& pw, int n, int h, bool sep, std::uint64_t budget, const PrecisionBudget& pb) {
    const XSpace S{pw.F, n, h};
    const Echelon Z = S.zeros(pw);
    const Scan sc = scan(
        pw.F, S.dim(), pw.lowest - h, row_limit(pw, h, pb), [&](std::int64_t k) { return S.rows(pw, k); },
        [&](const Subspace& V) { return V.contained_in(Z); });
    if (!sc.conclusive) return Outcome{Outcome::Inconclusive};
    const auto make = [&](const Vec& v) { return S.poly(v); };
    const auto less = [&](const XPoly& a, const XPoly& b) { return xless(n, a, b); };
    for (std::int64_t N = sc.M; N >= sc.kstart; --N) {
        const auto rows = S.rows(pw, N);
        std::function<bool(const Vec&)> valid;
        if (!sep)
            valid = [&](const Vec& v) { return !Z.contains(v); };
        else
            valid = [&](const Vec& v) {
                return hits(*pw.F, rows, v) && passes_filter(S.poly(v), Filter::Separable);
            };
        if (auto P = least<XPoly>(sc.at(N), valid, make, less, budget)) {
            Outcome o{Outcome::Ok, Rational(N, h), N};
            o.P = std::move(P);
            return o;
        }
    }
    return Outcome{Outcome::None};
}

bool tless(const TPoly& a, const TPoly& b) {
    for (int e = std::max(a.degree(), b.degree()); e >= 0; --e)
        if (a.coeff(e) != b.coeff(e)) return a.coeff(e) < b.coeff(e);
    return false;
}

/// Level d of lambda (hat = false: deg R = d) or lambda-hat (hat = true: 1 <= deg R <= d).
Outcome level_lambda(const Powers& pw, int n, int d, bool hat, std::uint64_t budget, const PrecisionBudget& pb) {
    const FieldPtr& F = pw.F;
    const int dim = d + 1;
    // R with every R xi^i in F_q[T]: for xi = a/b in lowest terms these are the multiples of b^n
    Echelon Z(F, dim);
    if (pw.minpoly && pw.minpoly->degree() == 1) {
        const TPoly bn = pw.minpoly->coeff(1).pow(static_cast<std::uint64_t>(n));
        for (int e = 0; e + bn.degree() <= d; ++e) {
            const TPoly m = bn.shifted(e);
            Vec v(dim, 0);
            for (int k = 0; k <= m.degree(); ++k) v[k] = m.coeff(k);
            Z.insert(std::move(v));
        }
    }
    const auto lower = [&](const Vec& v) {
        for (int e = hat ? 1 : d; e <= d; ++e)
            if (v[e] != 0) return false;
        return true;
    };
    const auto rows = [&](std::int64_t k) {
        std::vector<Vec> r;
        for (int i = 1; i <= n; ++i) {
            Vec row(dim, 0);
            for (int e = 0; e <= d; ++e) row[e] = pw.coeff(i, k + e);
            r.push_back(std::move(row));
        }
        return r;
    };
    const Scan sc = scan(F, dim, 1, row_limit(pw, d, pb), rows,
                         [&](const Subspace& V) { return V.contained_in(Z) || V.all_of(lower); });
    if (!sc.conclusive) return Outcome{Outcome::Inconclusive};
    if (sc.M < 1) return Outcome{Outcome::None};
    const auto make = [&](const Vec& v) { return TPoly(F, v); };
    auto R = least<TPoly>(sc.at(sc.M), [&](const Vec& v) { return !lower(v) && !Z.contains(v); }, make, tless, budget);
    if (!R) return Outcome{Outcome::None};
    Outcome o{Outcome::Ok, Rational(sc.M, hat ? d : R->degree()), sc.M};
    o.R = std::move(R);
    return o;
}

enum class Pick { Max, Min };

ExponentEstimate assemble(ExponentKind kind, const EnumerationWindow& w, const std::vector<int>& levels,
                          std::vector<Outcome>& out, Pick pick) {
    ExponentEstimate est;
    est.kind = kind;
    est.window = w;
    int best = -1;
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (out[j].st == Outcome::Skipped) ++est.skipped;
        if (out[j].st != Outcome::Ok) continue;
        est.per_level.push_back({levels[j], out[j].ratio});
        // ties go to the larger level
        if (best < 0 || (pick == Pick::Max ? out[j].ratio >= out[best].ratio : out[j].ratio <= out[best].ratio))
            best = static_cast<int>(j);
    }
    if (best >= 0) {
        Outcome& o = out[best];
        est.value = o.ratio;
        est.witness = std::move(o.P);
        est.witness_r = std::move(o.R);
        est.witness_alpha = std::move(o.alpha);
        est.witness_nu = o.nu;
        est.witness_h = levels[best];
    }
    return est;
}

}  // namespace

ExponentEstimate estimate_wn(const LaurentSeries& xi, const EnumerationWindow& w, const EstimatorOptions& opt) {
    const auto levels = level_range(w);
    auto out = run_levels(xi, w.n, levels, start_precision(xi, w.n, w.h_max), opt,
                          [&](const Powers& pw, const LaurentSeries&, int h) {
                              return level_w(pw, w.n, h, w.filter, opt.enum_budget, opt.budget);
                          });
    return assemble(w.filter == Filter::Separable ? ExponentKind::WSep : ExponentKind::W, w, levels, out, Pick::Max);
}

ExponentEstimate estimate_wn_star(const LaurentSeries& xi, const EnumerationWindow& w, const EstimatorOptions& opt) {
    const auto levels = level_range(w);
    auto out = run_levels(xi, w.n, levels, start_precision(xi, w.n, w.h_max), opt,
                          [&](const Powers& pw, const LaurentSeries& x, int h) {
                              return level_wstar(pw, x, w.n, h, opt.enum_budget, opt.budget);
                          });
    return assemble(ExponentKind::WStar, w, levels, out, Pick::Max);
}

ExponentEstimate estimate_what(const LaurentSeries& xi, const EnumerationWindow& w, bool sep,
                               const EstimatorOptions& opt) {
    const auto levels = level_range(w);
    auto out = run_levels(xi, w.n, levels, start_precision(xi, w.n, w.h_max), opt,
                          [&](const Powers& pw, const LaurentSeries&, int h) {
                              return level_what(pw, w.n, h, sep, opt.enum_budget, opt.budget);
                          });
    return assemble(sep ? ExponentKind::WHatSep : ExponentKind::WHat, w, levels, out, Pick::Min);
}

ExponentEstimate estimate_lambda(const LaurentSeries& xi, const EnumerationWindow& w, const EstimatorOptions& opt) {
    const auto levels = level_range(w);
    auto out = run_levels(xi, w.n, levels, start_precision(xi, w.n, w.h_max), opt,
                          [&](const Powers& pw, const LaurentSeries&, int d) {
                              return level_lambda(pw, w.n, d, false, opt.enum_budget, opt.budget);
                          });
    return assemble(ExponentKind::Lambda, w, levels, out, Pick::Max);
}

ExponentEstimate estimate_lambda_hat(const LaurentSeries& xi, const EnumerationWindow& w,
                                     const EstimatorOptions& opt) {
    const auto levels = level_range(w);
    auto out = run_levels(xi, w.n, levels, start_precision(xi, w.n, w.h_max), opt,
                          [&](const Powers& pw, const LaurentSeries&, int d) {
                              return level_lambda(pw, w.n, d, true, opt.enum_budget, opt.budget);
                          });
    return assemble(ExponentKind::LambdaHat, w, levels, out, Pick::Min);
}

ExponentEstimate brute_force_wn(const LaurentSeries& xi, const EnumerationWindow& w, const EstimatorOptions& opt) {
    const auto levels = level_range(w);
    const FieldPtr& F = xi.field();
    const int shards = std::max(1, opt.workers);
    PrecisionBudget wide = opt.budget;
    wide.max_terms *= 4;
    const LaurentSeries start = precision_ladder(xi, start_precision(xi, w.n, w.h_max), opt.budget).front();
    struct Best {
        std::optional<std::int64_t> nu;
        std::optional<XPoly> P;
        int skipped = 0;
    };
    std::vector<std::vector<Best>> part(shards, std::vector<Best>(levels.size()));
    parallel_for(shards, shards, [&](int s) {
        LaurentSeries x = start;
        enum_xpolys(
            F, w,
            [&](const XPoly& P) {
                const int h = P.height_exponent();
                if (h < w.h_min) return;
                Best& b = part[s][h - w.h_min];
                std::int64_t nu = 0;
                try {
                    const LaurentSeries v = xp_eval_certified(P, x, wide);
                    if (v.is_certified_zero()) return;
                    nu = v.start();
                } catch (const PrecisionError&) {
                    ++b.skipped;
                    return;
                }
                if (!b.nu || nu > *b.nu || (nu == *b.nu && key_less(P, *b.P, w.n))) {
                    b.nu = nu;
                    b.P = P;
                }
            },
            opt.enum_budget, s, shards);
    });
    std::vector<Outcome> out(levels.size());
    int skipped = 0;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        Best m;
        for (int s = 0; s < shards; ++s) {
            const Best& b = part[s][j];
            skipped += b.skipped;
            if (b.nu && (!m.nu || *b.nu > *m.nu || (*b.nu == *m.nu && key_less(*b.P, *m.P, w.n)))) m = b;
        }
        if (m.nu) {
            out[j] = Outcome{Outcome::Ok, Rational(*m.nu, levels[j]), *m.nu};
            out[j].P = m.P;
        }
    }
    auto est = assemble(w.filter == Filter::Separable ? ExponentKind::WSep : ExponentKind::W, w, levels, out, Pick::Max);
    est.skipped = skipped;
    return est;
}

VerificationReport liouville_check(const LaurentSeries& alpha, const EnumerationWindow& w, const EstimatorOptions& opt) {
    VerificationReport rep;
    rep.check = "liouville";
    const auto m = series_minpoly(alpha);
    if (!m || m->degree() < 1) throw Error(ErrorKind::PreconditionViolated, "liouville_check needs an algebraic series");
    const int d = m->degree();
    // Res(m, P) is a nonzero polynomial, whence nu(P(alpha)) <= (d - 1) h(P) + deg_X(P) h(m)
    const std::int64_t cl = static_cast<std::int64_t>(w.n) * m->primitive_part().height_exponent();
    const auto est = estimate_wn(alpha, w, opt);
    std::optional<std::int64_t> c;
    std::int64_t exact = 0;
    for (const auto& lv : est.per_level) {
        const Rational excess = (lv.value - Rational(d - 1)) * Rational(lv.h);
        const std::int64_t e = excess.num() / excess.den();
        if (!c || e > *c) c = e;
        exact += lv.value <= Rational(d - 1) ? 1 : 0;
        rep.record(e <= cl, [&] {
            return "h=" + std::to_string(lv.h) + " ratio " + lv.value.to_string() + " exceeds " +
                   std::to_string(d - 1) + " + " + std::to_string(cl) + "/h";
        });
    }
    rep.measured["liouville_c"] = std::to_string(cl);
    rep.measured["degree"] = std::to_string(d);
    rep.measured["slack_c"] = c ? std::to_string(std::max<std::int64_t>(*c, 0)) : "0";
    rep.measured["exact_passes"] = std::to_string(exact);
    rep.measured["slack_passes"] = std::to_string(static_cast<std::int64_t>(est.per_level.size()) - exact);
    rep.measured["skipped"] = std::to_string(est.skipped);
    return rep;
}

ClassifyReport classify_report(const LaurentSeries& xi, int n_max, int h_max, const EstimatorOptions& opt) {
    ClassifyReport rep;
    rep.disclaimer =
        "window estimates only: the classes are defined by limsup behaviour in n and H, which no finite window decides";
    std::vector<std::vector<std::optional<Rational>>> w1_running;
    for (int n = 1; n <= n_max; ++n) {
        EnumerationWindow win{n, 1, h_max, Filter::All};
        const auto w = estimate_wn(xi, win, opt);
        const auto wh = estimate_what(xi, win, false, opt);
        for (int h = 1; h <= h_max; ++h) {
            ClassifyReport::Row row{n, h, std::nullopt, std::nullopt};
            for (const auto& lv : w.per_level)
                if (lv.h == h) row.w = lv.value;
            for (const auto& lv : wh.per_level)
                if (lv.h == h) row.what = lv.value;
            rep.rows.push_back(row);
        }
    }
    // running maximum of the w_1 levels
    std::vector<Rational> run;
    for (const auto& r : rep.rows) {
        if (r.n != 1 || !r.w) continue;
        run.push_back(run.empty() || *r.w > run.back() ? *r.w : run.back());
    }
    const auto m = series_minpoly(xi);
    if (m && m->degree() >= 1) {
        const std::string w1 = run.empty() ? "?" : run.back().to_string();
        rep.suggestion = "algebraic/A-regime at n >= " + std::to_string(m->degree()) + ", w_1 ~ " + w1;
    } else if (run.size() >= 2 && run.back() >= Rational(3) && run.back() > run[run.size() / 2]) {
        rep.suggestion = "U-regime: w_1 window estimates increase without visible bound";
    } else {
        rep.suggestion = "S-regime: w_n ~ n";
    }
    return rep;
}

}  // namespace ffa
