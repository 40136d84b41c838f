#pragma once

#include <cstdint>

#include "ffapprox/laurent.hpp"
#include "ffapprox/tpoly.hpp"

namespace ffa {

/// Expansion of r, regenerable to any precision; minimal polynomial den*X - num.
LaurentSeries rational_series(const RatFn& r, std::int64_t prec);
/// sum_{k >= 0} T^{-p^k}, root of T X^p - T X + 1.
LaurentSeries mahler_series(const FieldPtr& field, std::int64_t prec);
/// sum_{k >= 1} T^{-k!}.
LaurentSeries factorial_series(const FieldPtr& field, std::int64_t prec);
/// Coefficients at indices >= 1 drawn uniformly from F_q by SplitMix64(seed).
LaurentSeries random_series(const FieldPtr& field, std::uint64_t seed, std::int64_t prec);
/// An exact finite series with its rational minimal polynomial attached.
LaurentSeries literal_series(const LaurentSeries& exact);
/// x^p, keeping a generator (and a minimal polynomial) when x has one.
LaurentSeries frobenius_series(const LaurentSeries& x);
/// The rational function equal to an exact finite series.
RatFn exact_to_ratfn(const LaurentSeries& exact);

}  // namespace ffa
