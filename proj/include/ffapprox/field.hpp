#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffapprox/error.hpp"

namespace ffa {

/// Element code in [0, q): the base-p digits are the coordinates in the
/// basis 1, g, ..., g^{f-1} of F_q over F_p.
using Elem = std::uint8_t;

/// The finite field F_q, q = p^f <= 256, in polynomial basis over F_p.
/// All operations are table lookups; a Field is immutable once built.
class Field {
public:
    /// `modulus` holds the coefficients (low to high) of a monic irreducible
    /// polynomial of degree f over F_p; an empty modulus with f > 1 selects the
    /// first monic irreducible in lexicographic order.
    static std::shared_ptr<const Field> make(int p, int f = 1, std::vector<int> modulus = {});

    int p() const { return p_; }
    int f() const { return f_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
    Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t k) const;
    /// x -> x^p.
    Elem frobenius(Elem a) const { return frob_[a]; }
    /// The unique r with r^p = a, computed as a^{p^{f-1}}.
    Elem pth_root(Elem a) const { return root_[a]; }

    /// Image of an integer under Z -> F_p -> F_q.
    Elem from_int(std::int64_t n) const;
    std::vector<int> coords(Elem a) const;
    Elem from_coords(std::span<const int> c) const;
    /// The generator g (the class of the variable modulo the modulus).
    Elem generator() const;

    /// "2", "g", "g+1", "2*g^2+1"; plain integers for prime fields.
    std::string format(Elem a) const;
    /// "p=3" or "p=2,f=2,modulus=g^2+g+1".
    std::string spec_string() const;

    bool same_as(const Field& other) const {
        return p_ == other.p_ && f_ == other.f_ && modulus_ == other.modulus_;
    }

private:
    Field() = default;
    std::size_t idx(Elem a, Elem b) const { return static_cast<std::size_t>(a) * q_ + b; }

    int p_ = 2;
    int f_ = 1;
    int q_ = 2;
    std::vector<int> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_, frob_, root_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(int n);

/// Field element bound to its field; mixing fields raises SpecMismatch.
class FqElement {
public:
    FqElement(FieldPtr field, Elem value);

    const FieldPtr& field() const { return field_; }
    Elem value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    friend FqElement operator+(const FqElement& a, const FqElement& b);
    friend FqElement operator-(const FqElement& a, const FqElement& b);
    friend FqElement operator*(const FqElement& a, const FqElement& b);
    FqElement operator-() const { return {field_, field_->neg(value_)}; }
    FqElement inverse() const;
    FqElement pow(std::uint64_t k) const { return {field_, field_->pow(value_, k)}; }
    FqElement pth_root() const { return {field_, field_->pth_root(value_)}; }
    FqElement frobenius() const { return {field_, field_->frobenius(value_)}; }

    friend bool operator==(const FqElement& a, const FqElement& b) {
        return a.field_->same_as(*b.field_) && a.value_ == b.value_;
    }
    std::string to_string() const { return field_->format(value_); }

private:
    FieldPtr field_;
    Elem value_;
};

}  // namespace ffa
