#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffa {

enum class ErrorKind {
    DivisionByZero,
    SpecMismatch,
    BothZero,
    BelowPrecision,
    NotAPthPower,
    ZeroPolynomial,
    ConstantPolynomial,
    BudgetExceeded,
    PreconditionViolated,
    ConstantCollapse,
    NewtonConditionFailed,
    NoBaseRoot,
    NoSuchBranch,
    Reducible,
    TooFewQuotients,
    ParseError,
    SemanticError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a coefficient window is too short to decide a valuation.
/// `attempted` is the precision (first unknown index) that was available.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, long long attempted)
        : Error(ErrorKind::BelowPrecision, what + " (precision " + std::to_string(attempted) + ")"),
          attempted_(attempted) {}

    long long attempted() const noexcept { return attempted_; }

private:
    long long attempted_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& expected)
        : Error(ErrorKind::ParseError, "at position " + std::to_string(position) + ": expected " + expected),
          position_(position),
          expected_(expected) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

}  // namespace ffa
