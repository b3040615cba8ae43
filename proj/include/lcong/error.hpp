#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcong {

enum class ErrorKind {
    InvalidInput,
    PrecisionLoss,
    NotIntegral,
    NoSimpleRoot,
    UnsupportedDegree,
    ConfigMismatch,
    NoMatching,
    NotCongruent,
    BadSquareRoot,
    TooLarge,
    InsufficientPrecision,
    UnsupportedPoint,
    SpecMismatch,
    IncompleteData,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// command-line front end can map it onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace lcong
