#include "nonsmooth/fixed_points.hpp"

#include "nonsmooth/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace nonsmooth {

RotationClass RotationClass::canonical(const OddPrime& p, std::int64_t c, std::int64_t d) {
    const std::int64_t rc = p.residue(c);
    const std::int64_t rd = p.residue(d);
    if (rc == 0 || rd == 0) {
        throw Error(ErrorCode::InvalidWeight, "rotation numbers (" + std::to_string(c) + "," +
                                                  std::to_string(d) + ") are not pseudofree mod " +
                                                  std::to_string(p.value()));
    }
    return from_residues(p.value(), rc, rd);
}

RotationClass RotationClass::from_residues(std::int64_t p, std::int64_t rc, std::int64_t rd) {
    const std::pair<std::int64_t, std::int64_t> orbit[] = {
        {rc, rd}, {rd, rc}, {p - rc, p - rd}, {p - rd, p - rc}};
    const auto best = *std::min_element(std::begin(orbit), std::end(orbit));
    return RotationClass(p, best.first, best.second);
}

RotationClass reverse_class(const RotationClass& k) {
    return RotationClass::from_residues(k.p_, k.c_, k.p_ - k.d_);
}

std::string to_string(const RotationClass& k) {
    return "(" + std::to_string(k.first()) + "," + std::to_string(k.second()) + ")";
}

std::string to_string(ComponentKind kind) {
    switch (kind) {
        case ComponentKind::CP2: return "CP2";
        case ComponentKind::CP2bar: return "CP2bar";
        case ComponentKind::S4: return "S4";
    }
    return "?";
}

std::string to_string(const PointSource& s) {
    static const char* cp2_labels[] = {"[1,0,0]", "[0,1,0]", "[0,0,1]"};
    static const char* s4_labels[] = {"+", "-"};
    std::string out = to_string(s.kind) + "#" + std::to_string(s.component);
    if (s.kind == ComponentKind::S4) {
        out += s4_labels[s.label];
    } else {
        out += cp2_labels[s.label];
    }
    return out;
}

std::vector<OrientedFixedPoint> component_fixed_points(const OddPrime& p, ComponentKind kind,
                                                       const WeightCP2& w,
                                                       std::size_t component) {
    if (kind == ComponentKind::S4) {
        throw Error(ErrorCode::InvalidWeight, "an S4 component takes a two-entry weight");
    }
    if (!is_valid_cp2(p, w)) {
        throw Error(ErrorCode::InvalidWeight,
                    to_string(w) + " is not a weight for p=" + std::to_string(p.value()));
    }
    const auto& a = w.a;
    // Affine chart at each coordinate point: rotation numbers are the
    // differences of the other two weights against the chart's own.
    const std::int64_t pairs[3][2] = {
        {a[1] - a[0], a[2] - a[0]},
        {a[0] - a[1], a[2] - a[1]},
        {a[0] - a[2], a[1] - a[2]},
    };
    const std::int64_t sign = kind == ComponentKind::CP2bar ? -1 : 1;
    std::vector<OrientedFixedPoint> out;
    out.reserve(3);
    for (int label = 0; label < 3; ++label) {
        out.push_back({RotationClass::canonical(p, pairs[label][0], sign * pairs[label][1]),
                       PointSource{kind, component, label}});
    }
    return out;
}

std::vector<OrientedFixedPoint> component_fixed_points(const OddPrime& p, const WeightS4& w,
                                                       std::size_t component) {
    if (!is_valid_s4(p, w)) {
        throw Error(ErrorCode::InvalidWeight,
                    to_string(w) + " is not a weight for p=" + std::to_string(p.value()));
    }
    return {
        {RotationClass::canonical(p, w.b[0], w.b[1]), PointSource{ComponentKind::S4, component, 0}},
        {RotationClass::canonical(p, w.b[0], -w.b[1]), PointSource{ComponentKind::S4, component, 1}},
    };
}

std::optional<WeightS4> is_cancelling_pair(const OrientedFixedPoint& x,
                                           const OrientedFixedPoint& y) {
    if (x.cls.prime() != y.cls.prime() || y.cls != reverse_class(x.cls)) return std::nullopt;
    // Every representative of either class is a weight of the pair; the
    // smallest is the smaller of the two canonical forms.
    const RotationClass& lo = std::min(x.cls, y.cls);
    return WeightS4{{lo.first(), lo.second()}};
}

bool equivalent_s4(const OddPrime& p, const WeightS4& x, const WeightS4& y) {
    auto data = [&](const WeightS4& w) {
        auto pts = component_fixed_points(p, w);
        return std::pair<RotationClass, RotationClass>(std::minmax(pts[0].cls, pts[1].cls));
    };
    return data(x) == data(y);
}

std::int64_t max_cancelling_pairs(const FixedPointMultiset& fps) {
    std::map<RotationClass, std::int64_t> multiplicity;
    for (const auto& pt : fps.points) ++multiplicity[pt.cls];
    std::int64_t total = 0;
    for (const auto& [cls, n] : multiplicity) {
        const RotationClass rev = reverse_class(cls);
        if (cls < rev) {
            if (auto it = multiplicity.find(rev); it != multiplicity.end()) {
                total += std::min(n, it->second);
            }
        }
    }
    return total;
}

std::vector<PointPair> select_disjoint_pairs(const FixedPointMultiset& fps, std::size_t s) {
    const auto available = max_cancelling_pairs(fps);
    if (static_cast<std::int64_t>(s) > available) {
        throw Error(ErrorCode::InsufficientPairs, "requested " + std::to_string(s) +
                                                      " cancelling pairs, only " +
                                                      std::to_string(available) + " exist");
    }
    std::vector<std::size_t> order(fps.points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return fps.points[i] < fps.points[j];
    });

    std::map<RotationClass, std::vector<std::size_t>> by_class;
    for (auto i : order) by_class[fps.points[i].cls].push_back(i);

    std::vector<PointPair> out;
    out.reserve(s);
    for (const auto& [cls, members] : by_class) {
        if (out.size() == s) break;
        const RotationClass rev = reverse_class(cls);
        if (!(cls < rev)) continue;
        auto it = by_class.find(rev);
        if (it == by_class.end()) continue;
        const auto& partners = it->second;
        for (std::size_t k = 0; k < std::min(members.size(), partners.size()) && out.size() < s;
             ++k) {
            out.emplace_back(std::min(members[k], partners[k]), std::max(members[k], partners[k]));
        }
    }
    return out;
}

}  // namespace nonsmooth
