#include "nonsmooth/error.hpp"

namespace nonsmooth {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::CongruentEntries: return "CongruentEntries";
        case ErrorCode::OddTotal: return "OddTotal";
        case ErrorCode::ZeroEntry: return "ZeroEntry";
        case ErrorCode::InvalidWeight: return "InvalidWeight";
        case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorCode::InsufficientPairs: return "InsufficientPairs";
        case ErrorCode::BadMatching: return "BadMatching";
        case ErrorCode::NotSpin: return "NotSpin";
        case ErrorCode::SignatureNotDivisibleBy8: return "SignatureNotDivisibleBy8";
        case ErrorCode::ExcludedManifold: return "ExcludedManifold";
        case ErrorCode::VacuousByDonaldson: return "VacuousByDonaldson";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::LimitsTooSmall: return "LimitsTooSmall";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::Malformed: return "Malformed";
    }
    return "Unknown";
}

}  // namespace nonsmooth
