#pragma once

// Weights of the linear model actions and the modular lattice-point count
// N(p, alpha) that drives the invariant Dirac index.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nonsmooth {

bool is_prime(std::int64_t n) noexcept;

/// A prime p >= 5. Construction is the only place primality is checked.
class OddPrime {
public:
    /// Throws Error(NotPrime) unless n is a prime not less than 5.
    explicit OddPrime(std::int64_t n);

    std::int64_t value() const noexcept { return p_; }
    operator std::int64_t() const noexcept { return p_; }

    /// Representative of x in [0, p).
    std::int64_t residue(std::int64_t x) const noexcept {
        const std::int64_t r = x % p_;
        return r < 0 ? r + p_ : r;
    }

    auto operator<=>(const OddPrime&) const = default;

private:
    std::int64_t p_;
};

/// Weight (a0, a1, a2) of a linear action on CP^2. The integer lifts are
/// authoritative: the parity of the total depends on them, so nothing here
/// canonicalizes entries.
struct WeightCP2 {
    std::array<std::int64_t, 3> a{};

    std::int64_t total() const;  // throws Error(Overflow)
    auto operator<=>(const WeightCP2&) const = default;
};

/// Weight (b1, b2) of a linear action on S^4.
struct WeightS4 {
    std::array<std::int64_t, 2> b{};

    auto operator<=>(const WeightS4&) const = default;
};

std::string to_string(const WeightCP2& w);
std::string to_string(const WeightS4& w);

/// Entries pairwise non-congruent mod p and an even total.
/// Throws Error(CongruentEntries) or Error(OddTotal).
WeightCP2 validate_weight_cp2(const OddPrime& p, std::array<std::int64_t, 3> a);

/// Both entries non-zero mod p. Throws Error(ZeroEntry).
WeightS4 validate_weight_s4(const OddPrime& p, std::array<std::int64_t, 2> b);

bool is_valid_cp2(const OddPrime& p, const WeightCP2& w) noexcept;
bool is_valid_s4(const OddPrime& p, const WeightS4& w) noexcept;

/// N(p, alpha): the number of (n0, n1, n2) >= 0 with n0 + n1 + n2 = (p-3)/2
/// and a0 n0 + a1 n1 + a2 n2 + |alpha|/2 = 0 mod p, by exhaustive enumeration.
/// Throws Error(InvalidWeight) when alpha is not valid for p.
std::int64_t lattice_count(const OddPrime& p, const WeightCP2& alpha);

/// Entry t counts the triplets whose weighted sum (shifted by |alpha|/2) is
/// t mod p. Entry 0 is lattice_count; the entries sum to (p^2 - 1) / 8.
/// Triplets are visited lexicographically in (n0, n1).
std::vector<std::int64_t> residue_spectrum(const OddPrime& p, const WeightCP2& alpha);

/// The two weight families with known closed-form counts.
enum class CountFamily {
    MinusOneZeroOne,  // (-1, 0, 1)
    MinusOneOneTwo,   // (-1, 1, 2)
};

/// Family of a weight, matched on exact integer lifts.
std::optional<CountFamily> family_of(const WeightCP2& w) noexcept;

WeightCP2 family_weight(CountFamily family) noexcept;

/// p = 12 l + q with q in {1, -1, 5, -5}; unique for primes p >= 5.
struct TwelveSplit {
    std::int64_t l;
    int q;
};

TwelveSplit split_mod_twelve(const OddPrime& p) noexcept;

/// k for (-1,0,1) with p = 4k +- 1; l-1 / l / l+1 for (-1,1,2) with
/// p = 12l-5 / 12l+-1 / 12l+5.
std::int64_t closed_form_count(const OddPrime& p, CountFamily family);

/// Throws Error(UnsupportedFamily) for any weight outside the two families.
std::int64_t closed_form_count(const OddPrime& p, const WeightCP2& w);

/// Memoizes lattice_count. The count only depends on the residues of the
/// entries and of |alpha|/2, which is the key. Not thread-safe; use one per
/// worker.
class CountCache {
public:
    std::int64_t count(const OddPrime& p, const WeightCP2& alpha);
    std::size_t size() const noexcept { return table_.size(); }

private:
    std::map<std::array<std::int64_t, 5>, std::int64_t> table_;
};

}  // namespace nonsmooth
