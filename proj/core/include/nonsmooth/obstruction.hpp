#pragma once

// Invariant part of the equivariant Dirac index, the smoothness window it
// must fall into for a smooth action, and certificates of violation.

#include "nonsmooth/realizability.hpp"
#include "nonsmooth/weights.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nonsmooth {

/// dim = sum_alpha - sum_alpha_prime - sigma_term, sigma_term = sigma * p / 8.
struct IndexValue {
    std::int64_t dim = 0;
    std::int64_t sum_alpha = 0;
    std::int64_t sum_alpha_prime = 0;
    std::int64_t sigma_term = 0;

    bool operator==(const IndexValue&) const = default;
};

/// Dimension of the Z_p-invariant part of the Z_p-index of the Dirac
/// operator, assuming the action is smooth.
/// Throws Error(NotSpin), Error(SignatureNotDivisibleBy8), Error(InvalidWeight).
IndexValue invariant_index_dim(const ActionConfiguration& cfg, const ManifoldInvariants& x);
IndexValue invariant_index_dim(const ActionConfiguration& cfg, const ManifoldInvariants& x,
                               CountCache& cache);

enum class VerdictKind { InsideWindow, ViolatesUpper, ViolatesLower, Inapplicable };

std::string to_string(VerdictKind kind);
std::optional<VerdictKind> parse_verdict(const std::string& text);

/// Window is the open interval (lower, upper) = (-b2-, b2+).
struct Verdict {
    VerdictKind kind = VerdictKind::Inapplicable;
    std::int64_t lower = 0;
    std::int64_t upper = 0;

    bool violates() const noexcept {
        return kind == VerdictKind::ViolatesUpper || kind == VerdictKind::ViolatesLower;
    }
    bool operator==(const Verdict&) const = default;
};

/// A smooth action must give -b2- < dim < b2+. The bound is only available
/// when X is spin with both b2+ and b2- positive; otherwise Inapplicable.
Verdict smoothness_window(std::int64_t dim, const ManifoldInvariants& x);

/// Self-contained record that a configuration is realizable on X and its
/// index leaves the window. `manifold` is X as given by the caller; when
/// `orientation_flipped` is set, the configuration, matching, index and
/// verdict all refer to X with the opposite orientation.
struct Certificate {
    ManifoldInvariants manifold;
    bool orientation_flipped = false;
    ActionConfiguration config;
    std::vector<PointPair> matching;
    IndexValue index;
    Verdict verdict;
    std::string digest;  // SHA-256 of the canonical JSON body

    ManifoldInvariants oriented_manifold() const noexcept {
        return orientation_flipped ? manifold.reversed() : manifold;
    }
};

/// Outcome of evaluating one configuration: a certificate when the
/// configuration is realizable and violates the window, otherwise the
/// reasons there is no obstruction.
struct Evaluation {
    std::optional<Certificate> certificate;
    RealizabilityReport report;
    std::optional<IndexValue> index;
    std::optional<Verdict> verdict;
    std::vector<std::string> reasons;

    bool found() const noexcept { return certificate.has_value(); }
};

struct EvaluateOptions {
    /// Record that `oriented` is the caller's manifold with reversed
    /// orientation.
    bool orientation_flipped = false;
    CountCache* cache = nullptr;
};

Evaluation evaluate(const ActionConfiguration& cfg, const ManifoldInvariants& oriented,
                    EvaluateOptions options = {});

struct Diagnostic {
    std::string code;
    std::string detail;
};

struct VerificationResult {
    bool accepted = false;
    std::vector<Diagnostic> diagnostics;

    bool has(const std::string& code) const noexcept;
};

/// Re-derives every claim of the certificate from its raw fields: digest,
/// spin and signature, weights, shape, arithmetic, each matching pair, the
/// index (via lattice_count) and the verdict. Accepts iff all pass.
VerificationResult verify_certificate(const Certificate& cert);

}  // namespace nonsmooth
