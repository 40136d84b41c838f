#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffapprox/laurent.hpp"
#include "ffapprox/rational.hpp"
#include "ffapprox/xpoly.hpp"

namespace ffa {

struct NewtonSegment {
    Rational slope;  // a root of valuation -slope for each unit of length
    int from = 0;
    int to = 0;
    int length() const { return to - from; }
};

/// Lower convex hull of the points (i, nu(c_i)) = (i, -deg c_i).
struct NewtonPolygon {
    std::vector<std::pair<int, std::int64_t>> vertices;
    std::vector<NewtonSegment> segments;
};

NewtonPolygon newton_polygon(const XPoly& P);

/// All roots of P in F_q((T^-1)), each known on indices < prec. Roots that are
/// finite series or rational are returned exactly / generator-backed.
std::vector<LaurentSeries> base_roots(const XPoly& P, std::int64_t prec);

/// Newton iteration from approx; requires nu(P(approx)) > 2 nu(P'(approx)).
LaurentSeries hensel_lift(const XPoly& P, const LaurentSeries& approx, std::int64_t target_prec);

struct ClosestRoot {
    LaurentSeries alpha;
    std::int64_t nu = 0;  // nu(xi - alpha)
    AbsValue dist() const { return AbsValue::power(-nu); }
};
/// Base root of P nearest to xi; NoBaseRoot when P has none.
ClosestRoot closest_root(const XPoly& P, const LaurentSeries& xi, const PrecisionBudget& budget = {});

/// Distinguishes one base root: its valuation and optionally the leading coefficient.
struct BranchSelector {
    std::int64_t valuation = 0;
    std::optional<Elem> lead;
    std::string to_string(const Field& f) const;
};

/// Generator-backed root of an irreducible minpoly; the minimal polynomial is
/// attached, so evaluations of its multiples certify zero.
LaurentSeries algebraic_series(const XPoly& minpoly, const BranchSelector& branch, std::int64_t prec);

}  // namespace ffa
