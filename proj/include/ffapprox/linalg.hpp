#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ffapprox/field.hpp"

namespace ffa {

using Vec = std::vector<Elem>;

Elem dot(const Field& F, const Vec& a, const Vec& b);
/// a += c * b
void axpy(const Field& F, Vec& a, Elem c, const Vec& b);

/// Reduced row echelon basis; answers membership queries.
class Echelon {
public:
    Echelon(FieldPtr field, int dim) : field_(std::move(field)), dim_(dim) {}

    /// Returns false when v was already in the span.
    bool insert(Vec v);
    bool contains(Vec v) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    int ambient() const { return dim_; }

private:
    void reduce(Vec& v) const;

    FieldPtr field_;
    int dim_;
    std::vector<Vec> rows_;
    std::vector<int> pivots_;
};

/// A subspace of F_q^dim given by a basis, shrunk one linear constraint at a time.
class Subspace {
public:
    Subspace(FieldPtr field, int dim) : field_(std::move(field)), dim_(dim) {}
    static Subspace full(FieldPtr field, int dim);

    /// Intersects with the kernel of v -> <row, v>. Returns true when the dimension dropped.
    bool constrain(const Vec& row);

    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient() const { return dim_; }
    const std::vector<Vec>& basis() const { return basis_; }

    bool contained_in(const Echelon& w) const;
    /// Every basis vector (hence every element) satisfies pred; pred must cut out a subspace.
    bool all_of(const std::function<bool(const Vec&)>& pred) const;

    /// q^dim, or UINT64_MAX when that overflows.
    std::uint64_t size() const;
    /// Visits every element once (zero included) in odometer order of the
    /// basis coordinates. Stops early when fn returns false.
    void for_each(const std::function<bool(const Vec&)>& fn) const;

private:
    FieldPtr field_;
    int dim_;
    std::vector<Vec> basis_;
};

}  // namespace ffa
