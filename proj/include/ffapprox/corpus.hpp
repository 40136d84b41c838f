#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffapprox/laurent.hpp"
#include "ffapprox/roots.hpp"
#include "ffapprox/xpoly.hpp"

namespace ffa {

enum class SeriesKind { Rational, Algebraic, Mahler, Factorial, Literal, Random };

struct SeriesSpec {
    SeriesKind kind = SeriesKind::Mahler;
    FieldPtr field;
    std::optional<RatFn> ratfn;
    std::optional<XPoly> poly;
    BranchSelector branch;
    std::optional<LaurentSeries> literal;
    std::uint64_t seed = 0;

    /// Canonical text form; parse_series_spec(format()) gives back an equal spec.
    std::string format() const;
    /// Generator-backed series known up to `prec`.
    LaurentSeries build(std::int64_t prec) const;
};

bool operator==(const SeriesSpec& a, const SeriesSpec& b);

/// `rational:(T)/(T^2+1)`, `algebraic:poly=...;branch=val:1`, `mahler`,
/// `factorial`, `literal:T^-1+T^-3` (also `laurent:`), `random:seed=42`.
SeriesSpec parse_series_spec(const FieldPtr& F, std::string_view text);

/// The named corpus: T/(T^2+1), mahler, factorial and random seeds 1..10.
std::vector<std::string> corpus_specs();
std::vector<SeriesSpec> corpus(const FieldPtr& F);

}  // namespace ffa
