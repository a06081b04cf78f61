#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nonsmooth {

enum class ErrorCode {
    NotPrime,
    CongruentEntries,
    OddTotal,
    ZeroEntry,
    InvalidWeight,
    UnsupportedFamily,
    InsufficientPairs,
    BadMatching,
    NotSpin,
    SignatureNotDivisibleBy8,
    ExcludedManifold,
    VacuousByDonaldson,
    OutOfRange,
    LimitsTooSmall,
    Overflow,
    Malformed,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type; the code is stable,
// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace nonsmooth
