#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffapprox/laurent.hpp"
#include "ffapprox/rational.hpp"
#include "ffapprox/xpoly.hpp"

namespace ffa {

enum class Filter { All, Separable, Irreducible };
std::string filter_name(Filter f);
Filter parse_filter(const std::string& s);

/// Polynomials of X-degree <= n with coefficient degrees <= h_max. Levels are
/// the exact heights h(P) in [h_min, h_max]; for lambda the levels are deg R.
struct EnumerationWindow {
    int n = 1;
    int h_min = 1;
    int h_max = 1;
    Filter filter = Filter::All;
};

struct EstimatorOptions {
    PrecisionBudget budget{};
    std::uint64_t enum_budget = 1ULL << 24;
    int workers = 1;
};

enum class ExponentKind { W, WSep, WStar, WHat, WHatSep, Lambda, LambdaHat };
std::string kind_name(ExponentKind k);

struct LevelValue {
    int h = 0;
    Rational value;
};

struct ExponentEstimate {
    ExponentKind kind = ExponentKind::W;
    EnumerationWindow window;
    std::optional<Rational> value;
    std::optional<XPoly> witness;                // P
    std::optional<TPoly> witness_r;              // R (lambda)
    std::optional<LaurentSeries> witness_alpha;  // alpha (w*)
    /// -log_q of |P(xi)|, |xi - alpha| or max_i ||R xi^i|| at the witness.
    std::int64_t witness_nu = 0;
    int witness_h = 0;
    std::vector<LevelValue> per_level;
    int skipped = 0;

    std::string witness_string() const;
};

/// sup over the window of nu(P(xi)) / h(P), P(xi) != 0, h(P) >= 1.
ExponentEstimate estimate_wn(const LaurentSeries& xi, const EnumerationWindow& w, const EstimatorOptions& opt = {});
/// sup over irreducible P and base-field roots alpha != xi of nu(xi - alpha) / h(P) - 1.
ExponentEstimate estimate_wn_star(const LaurentSeries& xi, const EnumerationWindow& w, const EstimatorOptions& opt = {});
/// min over levels h of max{nu(P(xi)) : h(P) <= h, P(xi) != 0} / h.
ExponentEstimate estimate_what(const LaurentSeries& xi, const EnumerationWindow& w, bool sep,
                               const EstimatorOptions& opt = {});
/// Levels are deg R in [h_min, h_max]; lambda takes the max over levels, lambda-hat
/// (deg R <= d at level d) the min.
ExponentEstimate estimate_lambda(const LaurentSeries& xi, const EnumerationWindow& w, const EstimatorOptions& opt = {});
ExponentEstimate estimate_lambda_hat(const LaurentSeries& xi, const EnumerationWindow& w,
                                     const EstimatorOptions& opt = {});

// ---- brute-force enumeration --------------------------------------------

/// q^{(n+1)(h_max+1)}, or UINT64_MAX on overflow.
std::uint64_t enumeration_size(const Field& F, const EnumerationWindow& w);
/// Digit of a_{i,e} sits at position i(h_max+1) + e; larger keys come later.
XPoly xpoly_from_key(const FieldPtr& F, int n, int h_max, std::uint64_t key);
std::uint64_t xpoly_key(const XPoly& P, int n, int h_max);
/// Canonical order for polynomials of X-degree <= n, independent of h_max.
bool key_less(const XPoly& a, const XPoly& b, int n);
bool passes_filter(const XPoly& P, Filter f);
/// Every nonzero P of the window passing the filter, in key order. The shard
/// [shard/nshards] is a contiguous key range.
void enum_xpolys(const FieldPtr& F, const EnumerationWindow& w, const std::function<void(const XPoly&)>& fn,
                 std::uint64_t budget = 1ULL << 24, int shard = 0, int nshards = 1);

/// Reference estimator: evaluates every polynomial of the window.
ExponentEstimate brute_force_wn(const LaurentSeries& xi, const EnumerationWindow& w, const EstimatorOptions& opt = {});

// ---- reports ----------------------------------------------------------

struct VerificationReport {
    std::string check;
    std::int64_t instances = 0;
    std::int64_t passed = 0;
    std::vector<std::string> counterexamples;
    std::int64_t quarantined = 0;  // out-of-condition instances, not counted
    std::map<std::string, std::string> measured;
    std::vector<std::string> notes;
    bool gated = true;  // informational reports never fail a run

    void record(bool ok, const std::function<std::string()>& describe);
    bool ok() const { return passed == instances; }
};

/// Per-level w ratios of an algebraic xi of degree d against d - 1.
VerificationReport liouville_check(const LaurentSeries& alpha, const EnumerationWindow& w,
                                   const EstimatorOptions& opt = {});

struct ClassifyReport {
    struct Row {
        int n = 0;
        int h = 0;
        std::optional<Rational> w, what;
    };
    std::vector<Row> rows;
    std::string suggestion;
    std::string disclaimer;
};
ClassifyReport classify_report(const LaurentSeries& xi, int n_max, int h_max, const EstimatorOptions& opt = {});

}  // namespace ffa
