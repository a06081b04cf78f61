#pragma once

// Fixed point data of the linear model actions on CP^2, conj-CP^2 and S^4,
// cancelling pairs, and disjoint cancelling-pair matchings.

#include "nonsmooth/weights.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nonsmooth {

/// Oriented isomorphism class of a tangent representation C_c + C_d at an
/// isolated fixed point. Stored as the lexicographic minimum of the orbit
/// {(c,d), (d,c), (-c,-d), (-d,-c)} with residues in [1, p-1].
class RotationClass {
public:
    /// Throws Error(InvalidWeight) when c or d is 0 mod p.
    static RotationClass canonical(const OddPrime& p, std::int64_t c, std::int64_t d);

    std::int64_t prime() const noexcept { return p_; }
    std::int64_t first() const noexcept { return c_; }
    std::int64_t second() const noexcept { return d_; }

    auto operator<=>(const RotationClass&) const = default;

private:
    friend RotationClass reverse_class(const RotationClass& k);

    RotationClass(std::int64_t p, std::int64_t c, std::int64_t d) : p_(p), c_(c), d_(d) {}

    // rc, rd already in [1, p-1].
    static RotationClass from_residues(std::int64_t p, std::int64_t rc, std::int64_t rd);

    std::int64_t p_;
    std::int64_t c_;
    std::int64_t d_;
};

/// The class of the same representation with the opposite orientation:
/// canonical(c, -d). An involution without fixed points for odd p.
RotationClass reverse_class(const RotationClass& k);

std::string to_string(const RotationClass& k);

enum class ComponentKind { CP2, CP2bar, S4 };

std::string to_string(ComponentKind kind);

/// Which model component a fixed point comes from. For CP^2 components the
/// label 0, 1, 2 is the point [1,0,0], [0,1,0], [0,0,1]; for S^4 the label 0
/// is the point with class (b1, b2) and 1 the point with class (b1, -b2).
struct PointSource {
    ComponentKind kind;
    std::size_t component;
    int label;

    auto operator<=>(const PointSource&) const = default;
};

std::string to_string(const PointSource& s);

/// A fixed point on a component of either orientation. Points on a
/// conj-CP^2 are stored by the reversal of their complex-chart class, so all
/// stored classes are in the standard orientation.
struct OrientedFixedPoint {
    RotationClass cls;
    PointSource source;

    auto operator<=>(const OrientedFixedPoint&) const = default;
};

struct FixedPointMultiset {
    OddPrime p;
    std::vector<OrientedFixedPoint> points;
};

/// Three points for kind CP2 or CP2bar. Throws Error(InvalidWeight) if the
/// weight is not valid for p or kind is S4.
std::vector<OrientedFixedPoint> component_fixed_points(const OddPrime& p, ComponentKind kind,
                                                       const WeightCP2& w,
                                                       std::size_t component = 0);

/// Two points of S^4_beta.
std::vector<OrientedFixedPoint> component_fixed_points(const OddPrime& p, const WeightS4& w,
                                                       std::size_t component = 0);

/// A weight beta whose S^4_beta has exactly the data {x, y}, or nullopt if
/// the two points are not orientation-reversed copies of each other. The
/// weight returned is the lexicographically smallest representative with
/// entries in [1, p-1].
std::optional<WeightS4> is_cancelling_pair(const OrientedFixedPoint& x,
                                           const OrientedFixedPoint& y);

/// Two S^4 weights are equivalent when their spheres have the same data.
bool equivalent_s4(const OddPrime& p, const WeightS4& x, const WeightS4& y);

/// Maximum number of pairwise disjoint cancelling pairs. Cancellation only
/// links a class to its reversal, so the answer is the sum over class pairs
/// {k, reverse(k)} of min(multiplicity(k), multiplicity(reverse(k))).
std::int64_t max_cancelling_pairs(const FixedPointMultiset& fps);

using PointPair = std::pair<std::size_t, std::size_t>;

/// Exactly s disjoint cancelling pairs as index pairs (i < j) into
/// fps.points. Points are sorted by (class, source) and paired greedily per
/// class pair in increasing class order, so the result is deterministic.
/// Throws Error(InsufficientPairs) if s exceeds max_cancelling_pairs.
std::vector<PointPair> select_disjoint_pairs(const FixedPointMultiset& fps, std::size_t s);

}  // namespace nonsmooth
