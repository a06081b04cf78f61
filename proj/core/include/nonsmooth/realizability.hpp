#pragma once

// Numerical hypotheses under which a disjoint union of linear models,
// minus a set of cancelling pairs, is the fixed point data of a
// homologically trivial pseudofree locally linear Z_p-action on X.

#include "nonsmooth/fixed_points.hpp"
#include "nonsmooth/weights.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nonsmooth {

/// Numerical invariants of a closed simply connected oriented topological
/// 4-manifold. Nothing beyond (b2+, b2-, spin) is carried.
struct ManifoldInvariants {
    std::int64_t b2_plus = 0;
    std::int64_t b2_minus = 0;
    bool spin = true;

    std::int64_t sigma() const noexcept { return b2_plus - b2_minus; }
    std::int64_t chi() const noexcept { return 2 + b2_plus + b2_minus; }
    std::int64_t b2() const noexcept { return b2_plus + b2_minus; }

    /// Same manifold with the opposite orientation.
    ManifoldInvariants reversed() const noexcept { return {b2_minus, b2_plus, spin}; }

    auto operator<=>(const ManifoldInvariants&) const = default;
};

/// Throws Error(OutOfRange) for negative Betti numbers and
/// Error(SignatureNotDivisibleBy8) for a spin form with sigma != 0 mod 8.
ManifoldInvariants make_manifold(std::int64_t b2_plus, std::int64_t b2_minus, bool spin);

std::string to_string(const ManifoldInvariants& x);

/// Candidate disjoint union: m copies of CP^2, m' of conj-CP^2, r of S^4,
/// of which s cancelling pairs are to be removed.
struct ActionConfiguration {
    OddPrime p;
    std::int64_t m = 0;
    std::int64_t m_prime = 0;
    std::int64_t r = 0;
    std::int64_t s = 0;
    std::vector<WeightCP2> alphas;
    std::vector<WeightCP2> alpha_primes;
    std::vector<WeightS4> betas;

    bool operator==(const ActionConfiguration&) const = default;
};

/// The configuration viewed from the opposite orientation: CP^2 and
/// conj-CP^2 components trade places.
ActionConfiguration reverse_orientation(const ActionConfiguration& cfg);

/// All fixed points of the disjoint union in component order (CP^2, then
/// conj-CP^2, then S^4, each by index) and point label order. This order is
/// what matching indices refer to. Throws Error(InvalidWeight).
FixedPointMultiset enumerate_fixed_points(const ActionConfiguration& cfg);

enum class FailureKind {
    SignatureMismatch,
    EulerMismatch,
    InsufficientPairs,
    InvalidWeight,
    ShapeMismatch,  // list lengths disagree with (m, m', r) or a count is negative
};

std::string to_string(FailureKind kind);

struct Failure {
    FailureKind kind;
    std::string detail;
};

struct RealizabilityReport {
    bool arithmetic_ok = false;
    std::optional<std::vector<PointPair>> matching;
    std::int64_t residual_count = 0;
    std::vector<Failure> failures;

    bool realizable() const noexcept {
        return arithmetic_ok && matching.has_value() && failures.empty();
    }
    bool has_failure(FailureKind kind) const noexcept;
};

/// Checks m - m' = sigma(X) and 3(m + m') + 2r - 2s = chi(X). The second
/// relation counts the fixed points left after removing s pairs; residual
/// count is always filled in.
RealizabilityReport check_arithmetic(const ActionConfiguration& cfg, const ManifoldInvariants& x);

/// check_arithmetic plus weight validity and a concrete matching of s
/// disjoint cancelling pairs. The REP, GSF and TOR conditions of the
/// Edmonds-Ewing criterion follow from these and are not re-derived.
RealizabilityReport check_realizable(const ActionConfiguration& cfg, const ManifoldInvariants& x);

/// Fixed points not used by the matching. Throws Error(BadMatching) if a
/// pair is out of range, reuses a point, or is not a cancelling pair.
FixedPointMultiset residual_data(const ActionConfiguration& cfg, const ManifoldInvariants& x,
                                 const std::vector<PointPair>& matching);

}  // namespace nonsmooth
