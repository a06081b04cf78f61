#pragma once

// Constructive search for certificates: the named weight families, the
// general construction valid for every spin X, a bounded enumerative
// search, and sweeps over primes.

#include "nonsmooth/obstruction.hpp"
#include "nonsmooth/realizability.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nonsmooth {

/// Smallest prime threshold 12 * floor((max(b2+, b2-) + 1) / 2) - 5 above
/// which the general construction always certifies.
struct PrimeBound {
    std::int64_t b2max = 0;
    std::int64_t bound = 0;
};

PrimeBound prime_bound(const ManifoldInvariants& x);

/// A configuration together with the orientation it is stated in.
struct Candidate {
    ActionConfiguration config;
    ManifoldInvariants oriented;
    bool orientation_flipped = false;
    std::string family;
};

/// Result of any construction at a single prime.
struct SearchOutcome {
    std::optional<Certificate> certificate;
    /// dim of the certificate, or of the candidate with the largest |dim|
    /// when nothing was found.
    std::optional<std::int64_t> dim;
    std::string family;
    std::vector<std::string> notes;

    bool found() const noexcept { return certificate.has_value(); }
};

/// The general construction. Orients X so that sigma <= 0, takes conj-CP^2
/// weights (-1, R(j), R(j)+1) with R(j) = j mod (p-3) for 1 <= j <= -sigma,
/// and one free CP^2 / conj-CP^2 pair taking (-1,0,1) and (-1,1,2) in both
/// orders. With chi >= -3 sigma + 6 the spheres absorb the Euler
/// characteristic (r = (3 sigma - 6 + chi) / 2, s = 0); otherwise
/// s = (-3 sigma + 6 - chi) / 2 cancelling pairs are removed from the chain.
///
/// Throws Error(NotSpin), Error(ExcludedManifold) for S^4 and S^2 x S^2,
/// Error(VacuousByDonaldson) when the chain cannot supply s pairs (b2+ <= 2
/// after orienting), which no smooth spin X can have.
std::vector<Candidate> general_candidates(const ManifoldInvariants& x, const OddPrime& p);

/// Evaluates both general candidates and keeps the first certificate.
SearchOutcome certify_general(const ManifoldInvariants& x, const OddPrime& p,
                              CountCache* cache = nullptr);

/// #^n(S^2 x S^2): m = m' with n + 1 = 3m + r, 0 <= r <= 2, s = 0, all CP^2
/// weights (-1,0,1), all conj-CP^2 weights (-1,1,2), spheres (1,2).
SearchOutcome certify_s2xs2_sum(std::int64_t n, const OddPrime& p);

/// 16 conj-CP^2 components cycling (-1,1,2), (-1,2,3), (-1,3,4), (-2,2,4)
/// with s = 12, plus t spheres, on a spin X with sigma = -16 (after
/// orienting) and b2+ = 3 + t. Not found when X has another shape.
SearchOutcome certify_k3_pattern(const ManifoldInvariants& x, const OddPrime& p);

/// K3 # t(S^2 x S^2) at p = 11. Throws Error(OutOfRange) for t outside
/// [0, 3]; for t > 3 the message carries the (non-violating) dim and window.
SearchOutcome certify_k3_stabilized(std::int64_t t);

struct SearchLimits {
    /// Pool of weights (-1, a, a + d) with 0 <= a <= pool_limit and
    /// 1 <= d <= pool_limit, filtered to those valid at p.
    std::int64_t pool_limit = 5;
    /// CP^2 (conj-CP^2) weights repeat a cyclic pattern of at most this
    /// many pool weights.
    std::int64_t max_cp2_pattern = 2;
    std::int64_t max_cp2bar_pattern = 4;
    /// Decompositions use 0 <= m <= max_cp2 and at most extra_spheres more
    /// spheres than the minimum.
    std::int64_t max_cp2 = 3;
    std::int64_t extra_spheres = 2;
    std::uint64_t max_candidates = 20'000'000;
};

struct BoundedSearchResult {
    std::optional<Certificate> certificate;
    /// Largest |dim| among realizable candidates examined (signed).
    std::optional<std::int64_t> extremal_dim;
    std::uint64_t examined = 0;
    bool exhausted_budget = false;
};

/// Deterministic enumeration: decompositions (m, m', r, s) by increasing
/// m + m' + r, then m, then r; for each, CP^2 patterns then conj-CP^2
/// patterns by length and lexicographically over the sorted pool. First
/// certificate wins. Throws Error(LimitsTooSmall) when the pool or the set
/// of decompositions is empty.
BoundedSearchResult bounded_search(const ManifoldInvariants& x, const OddPrime& p,
                                   const SearchLimits& limits = {});

enum class Strategy { General, S2xS2Sum, K3Pattern, Bounded };

/// CLI names: lemma42, thm13, thm14, bounded.
std::string to_string(Strategy s);
std::optional<Strategy> parse_strategy(const std::string& name);

struct CertifyOptions {
    SearchLimits limits;
    CountCache* cache = nullptr;
};

/// One prime, one strategy. Certificates are re-verified before being
/// returned; a certificate that fails verification is dropped with a note.
SearchOutcome certify(const ManifoldInvariants& x, const OddPrime& p, Strategy strategy,
                      const CertifyOptions& options = {});

struct SweepRow {
    std::int64_t p = 0;
    bool found = false;
    std::optional<std::int64_t> dim;
    std::string family;
    double runtime_ms = 0.0;
    std::optional<Certificate> certificate;
};

struct SweepOptions {
    SearchLimits limits;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// One row per prime in [lo, hi] (primes below 5 skipped), in prime order.
/// Rows are independent and computed concurrently.
std::vector<SweepRow> prime_sweep(const ManifoldInvariants& x, std::int64_t lo, std::int64_t hi,
                                  Strategy strategy, const SweepOptions& options = {});

/// Header p,found,dim,family,runtime_ms. With timing off the runtime column
/// is left empty so output is byte-stable.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing = true);

/// A spin manifold whose signature is not divisible by 16 has no smooth
/// structure at all, so any certificate for it is vacuous.
bool rokhlin_excludes_smooth(const ManifoldInvariants& x) noexcept;

}  // namespace nonsmooth
