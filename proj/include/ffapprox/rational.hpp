#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "ffapprox/error.hpp"

namespace ffa {

/// Exact ratio of two 64-bit integers, always normalized (den > 0, gcd 1).
/// Exponents are carried on the log_q scale, so these never need floats.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (d == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    Rational operator-() const { return {-num_, den_}; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// An absolute value q^exponent, or exactly zero. Never a float.
struct AbsValue {
    bool zero = false;
    std::int64_t exponent = 0;

    static AbsValue zero_value() { return {true, 0}; }
    static AbsValue power(std::int64_t e) { return {false, e}; }

    friend bool operator==(const AbsValue&, const AbsValue&) = default;
    friend std::strong_ordering operator<=>(const AbsValue& a, const AbsValue& b) {
        if (a.zero || b.zero) return static_cast<int>(!a.zero) <=> static_cast<int>(!b.zero);
        return a.exponent <=> b.exponent;
    }
    friend AbsValue operator*(const AbsValue& a, const AbsValue& b) {
        if (a.zero || b.zero) return zero_value();
        return power(a.exponent + b.exponent);
    }

    std::string to_string() const { return zero ? "0" : "q^" + std::to_string(exponent); }
};

}  // namespace ffa
