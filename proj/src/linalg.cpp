#include "ffapprox/linalg.hpp"

#include <limits>

namespace ffa {

Elem dot(const Field& F, const Vec& a, const Vec& b) {
    Elem s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s = F.add(s, F.mul(a[i], b[i]));
    return s;
}

void axpy(const Field& F, Vec& a, Elem c, const Vec& b) {
    if (c == 0) return;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0) a[i] = F.add(a[i], F.mul(c, b[i]));
}

void Echelon::reduce(Vec& v) const {
    const Field& F = *field_;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (v[pivots_[r]] != 0) axpy(F, v, F.neg(v[pivots_[r]]), rows_[r]);
}

bool Echelon::insert(Vec v) {
    const Field& F = *field_;
    reduce(v);
    int piv = -1;
    for (int i = 0; i < dim_; ++i)
        if (v[i] != 0) {
            piv = i;
            break;
        }
    if (piv < 0) return false;
    const Elem s = F.inv(v[piv]);
    for (auto& x : v) x = F.mul(x, s);
    for (auto& row : rows_)
        if (row[piv] != 0) axpy(F, row, F.neg(row[piv]), v);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

bool Echelon::contains(Vec v) const {
    reduce(v);
    for (Elem x : v)
        if (x != 0) return false;
    return true;
}

Subspace Subspace::full(FieldPtr field, int dim) {
    Subspace s(std::move(field), dim);
    for (int i = 0; i < dim; ++i) {
        Vec e(dim, 0);
        e[i] = 1;
        s.basis_.push_back(std::move(e));
    }
    return s;
}

bool Subspace::constrain(const Vec& row) {
    const Field& F = *field_;
    std::vector<Elem> d(basis_.size());
    int piv = -1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        d[i] = dot(F, row, basis_[i]);
        if (d[i] != 0 && piv < 0) piv = static_cast<int>(i);
    }
    if (piv < 0) return false;
    const Elem inv = F.inv(d[piv]);
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (static_cast<int>(i) != piv && d[i] != 0) axpy(F, basis_[i], F.neg(F.mul(d[i], inv)), basis_[piv]);
    basis_.erase(basis_.begin() + piv);
    return true;
}

bool Subspace::contained_in(const Echelon& w) const {
    for (const auto& b : basis_)
        if (!w.contains(b)) return false;
    return true;
}

bool Subspace::all_of(const std::function<bool(const Vec&)>& pred) const {
    for (const auto& b : basis_)
        if (!pred(b)) return false;
    return true;
}

std::uint64_t Subspace::size() const {
    std::uint64_t n = 1;
    const auto q = static_cast<std::uint64_t>(field_->q());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
        n *= q;
    }
    return n;
}

void Subspace::for_each(const std::function<bool(const Vec&)>& fn) const {
    const Field& F = *field_;
    const int q = F.q();
    const std::size_t k = basis_.size();
    std::vector<int> coef(k, 0);
    Vec v(dim_, 0);
    for (;;) {
        if (!fn(v)) return;
        // odometer step; v tracks sum coef[i] * basis[i]
        std::size_t i = 0;
        for (; i < k; ++i) {
            const int next = coef[i] + 1 == q ? 0 : coef[i] + 1;
            axpy(F, v, F.sub(static_cast<Elem>(next), static_cast<Elem>(coef[i])), basis_[i]);
            coef[i] = next;
            if (next != 0) break;
        }
        if (i == k) return;
    }
}

}  // namespace ffa
