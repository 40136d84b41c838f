#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffapprox/field.hpp"
#include "ffapprox/rational.hpp"
#include "ffapprox/tpoly.hpp"

namespace ffa {

class SeriesSource;

struct PrecisionBudget {
    enum class OnExhaust { Error, ReturnUnknown };
    std::int64_t max_terms = 4096;
    OnExhaust on_exhaust = OnExhaust::Error;
};

/// Element of F_q((T^-1)) known on a window of indices. Index n carries the
/// coefficient of T^{-n}. Indices below start() are zero, indices in
/// [start(), prec()) are known, prec() == kExact marks an exact finite series.
class LaurentSeries {
public:
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

    explicit LaurentSeries(FieldPtr field) : field_(std::move(field)) {}
    /// Coefficients for indices start, start+1, ...; everything from
    /// start + coeffs.size() up to prec is zero.
    LaurentSeries(FieldPtr field, std::int64_t start, std::vector<Elem> coeffs, std::int64_t prec,
                  std::shared_ptr<const SeriesSource> source = nullptr);

    static LaurentSeries zero(FieldPtr field) { return LaurentSeries(std::move(field)); }
    static LaurentSeries monomial(FieldPtr field, Elem c, std::int64_t index);
    static LaurentSeries from_tpoly(const TPoly& a);
    static LaurentSeries from_rational(const RatFn& r, std::int64_t prec);

    const FieldPtr& field() const { return field_; }
    std::int64_t prec() const { return prec_; }
    bool is_exact() const { return prec_ == kExact; }
    /// First index with a nonzero coefficient, or prec() if none is known.
    std::int64_t start() const { return c_.empty() ? prec_ : start_; }
    const std::vector<Elem>& stored() const { return c_; }
    /// Lower bound on the valuation that never throws.
    std::int64_t valuation_lower_bound() const { return start(); }
    bool known_nonzero() const { return !c_.empty(); }
    bool is_certified_zero() const { return c_.empty() && is_exact(); }
    /// Throws PrecisionError when no nonzero coefficient is known and zero is not certified.
    std::optional<std::int64_t> valuation() const;
    /// |x| = q^{-nu}, exact.
    AbsValue abs() const;
    Elem coeff(std::int64_t n) const;
    /// Coefficients on [from, to); throws if the window is not known.
    std::vector<Elem> window(std::int64_t from, std::int64_t to) const;

    const std::shared_ptr<const SeriesSource>& source() const { return source_; }
    LaurentSeries without_source() const;
    /// Same value known up to min(prec, p); exact series become inexact.
    LaurentSeries truncated(std::int64_t p) const;
    /// Regenerates from the source so that prec() >= target (bounded by the budget).
    LaurentSeries extended(std::int64_t target, const PrecisionBudget& budget = {}) const;

    LaurentSeries operator-() const;
    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    LaurentSeries scaled(Elem c) const;
    LaurentSeries times(const TPoly& a) const;
    /// Multiplication by T^k (shifts indices by -k).
    LaurentSeries shifted(std::int64_t k) const;
    LaurentSeries pow(unsigned k) const;

    /// Same window and same coefficients (source ignored).
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

    /// "T^2+1+2*T^-3+O(T^-8)".
    std::string to_string(std::size_t max_terms = 16) const;

private:
    void normalize();

    FieldPtr field_;
    std::int64_t start_ = 0;
    std::int64_t prec_ = kExact;
    std::vector<Elem> c_;
    std::shared_ptr<const SeriesSource> source_;
};

/// Inverse; for an exact non-monomial input the result is known up to `cap`.
LaurentSeries inverse(const LaurentSeries& x, std::int64_t cap);
/// ||x|| = |sum_{n >= 1} a_n T^-n|.
AbsValue frac_part_abs(const LaurentSeries& x);
/// x = P(T) + frac with nu(frac) >= 1.
std::pair<TPoly, LaurentSeries> poly_part(const LaurentSeries& x);
/// x^p.
LaurentSeries frobenius(const LaurentSeries& x);
/// gamma with gamma^p = x; NotAPthPower when some known index is not divisible by p.
LaurentSeries pth_root(const LaurentSeries& x);
/// Lambda_i for exponent p^j: x = sum_i T^i Lambda_i(x)^{p^j}.
LaurentSeries cartier(const LaurentSeries& x, int i, int j);

/// Deterministic coefficient generator behind a series.
class SeriesSource : public std::enable_shared_from_this<SeriesSource> {
public:
    virtual ~SeriesSource() = default;
    virtual FieldPtr field() const = 0;
    /// The series known at least up to prec, with this source attached.
    virtual LaurentSeries generate(std::int64_t prec) const = 0;
    /// Coefficients (in X) of the minimal polynomial over F_q[T], when known.
    virtual std::optional<std::vector<TPoly>> minimal_polynomial() const { return std::nullopt; }
    virtual std::string describe() const = 0;

protected:
    LaurentSeries attach(const LaurentSeries& s) const;
};

std::int64_t sat_add(std::int64_t a, std::int64_t b);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

}  // namespace ffa
