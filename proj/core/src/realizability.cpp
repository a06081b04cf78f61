#include "nonsmooth/realizability.hpp"

#include "nonsmooth/error.hpp"

#include <algorithm>

namespace nonsmooth {

ManifoldInvariants make_manifold(std::int64_t b2_plus, std::int64_t b2_minus, bool spin) {
    if (b2_plus < 0 || b2_minus < 0) {
        throw Error(ErrorCode::OutOfRange, "Betti numbers must be non-negative");
    }
    ManifoldInvariants x{b2_plus, b2_minus, spin};
    if (spin && x.sigma() % 8 != 0) {
        throw Error(ErrorCode::SignatureNotDivisibleBy8,
                    "a spin form has signature divisible by 8, got " + std::to_string(x.sigma()));
    }
    return x;
}

std::string to_string(const ManifoldInvariants& x) {
    return "(b2+=" + std::to_string(x.b2_plus) + ", b2-=" + std::to_string(x.b2_minus) +
           (x.spin ? ", spin)" : ", non-spin)");
}

ActionConfiguration reverse_orientation(const ActionConfiguration& cfg) {
    ActionConfiguration out = cfg;
    std::swap(out.m, out.m_prime);
    std::swap(out.alphas, out.alpha_primes);
    return out;
}

FixedPointMultiset enumerate_fixed_points(const ActionConfiguration& cfg) {
    FixedPointMultiset fps{cfg.p, {}};
    fps.points.reserve(3 * (cfg.alphas.size() + cfg.alpha_primes.size()) + 2 * cfg.betas.size());
    auto append = [&](std::vector<OrientedFixedPoint> pts) {
        fps.points.insert(fps.points.end(), pts.begin(), pts.end());
    };
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        append(component_fixed_points(cfg.p, ComponentKind::CP2, cfg.alphas[i], i));
    }
    for (std::size_t j = 0; j < cfg.alpha_primes.size(); ++j) {
        append(component_fixed_points(cfg.p, ComponentKind::CP2bar, cfg.alpha_primes[j], j));
    }
    for (std::size_t k = 0; k < cfg.betas.size(); ++k) {
        append(component_fixed_points(cfg.p, cfg.betas[k], k));
    }
    return fps;
}

std::string to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::SignatureMismatch: return "SignatureMismatch";
        case FailureKind::EulerMismatch: return "EulerMismatch";
        case FailureKind::InsufficientPairs: return "InsufficientPairs";
        case FailureKind::InvalidWeight: return "InvalidWeight";
        case FailureKind::ShapeMismatch: return "ShapeMismatch";
    }
    return "?";
}

bool RealizabilityReport::has_failure(FailureKind kind) const noexcept {
    return std::any_of(failures.begin(), failures.end(),
                       [kind](const Failure& f) { return f.kind == kind; });
}

RealizabilityReport check_arithmetic(const ActionConfiguration& cfg, const ManifoldInvariants& x) {
    RealizabilityReport report;
    report.residual_count = 3 * (cfg.m + cfg.m_prime) + 2 * cfg.r - 2 * cfg.s;
    bool ok = true;
    if (cfg.m < 0 || cfg.m_prime < 0 || cfg.r < 0 || cfg.s < 0) {
        report.failures.push_back({FailureKind::ShapeMismatch, "m, m', r, s must be non-negative"});
        ok = false;
    }
    if (cfg.m - cfg.m_prime != x.sigma()) {
        report.failures.push_back(
            {FailureKind::SignatureMismatch, "m - m' = " + std::to_string(cfg.m - cfg.m_prime) +
                                                 " but sigma = " + std::to_string(x.sigma())});
        ok = false;
    }
    if (report.residual_count != x.chi()) {
        report.failures.push_back({FailureKind::EulerMismatch,
                                   "3(m+m') + 2r - 2s = " + std::to_string(report.residual_count) +
                                       " but chi = " + std::to_string(x.chi())});
        ok = false;
    }
    report.arithmetic_ok = ok;
    return report;
}

RealizabilityReport check_realizable(const ActionConfiguration& cfg, const ManifoldInvariants& x) {
    RealizabilityReport report = check_arithmetic(cfg, x);

    const auto size_is = [](const auto& v, std::int64_t n) {
        return n >= 0 && v.size() == static_cast<std::size_t>(n);
    };
    if (!size_is(cfg.alphas, cfg.m) || !size_is(cfg.alpha_primes, cfg.m_prime) ||
        !size_is(cfg.betas, cfg.r)) {
        report.failures.push_back(
            {FailureKind::ShapeMismatch, "weight list lengths do not match (m, m', r)"});
        return report;
    }
    bool weights_ok = true;
    for (const auto& w : cfg.alphas) {
        if (!is_valid_cp2(cfg.p, w)) {
            report.failures.push_back({FailureKind::InvalidWeight, "CP2 weight " + to_string(w)});
            weights_ok = false;
        }
    }
    for (const auto& w : cfg.alpha_primes) {
        if (!is_valid_cp2(cfg.p, w)) {
            report.failures.push_back({FailureKind::InvalidWeight, "CP2bar weight " + to_string(w)});
            weights_ok = false;
        }
    }
    for (const auto& w : cfg.betas) {
        if (!is_valid_s4(cfg.p, w)) {
            report.failures.push_back({FailureKind::InvalidWeight, "S4 weight " + to_string(w)});
            weights_ok = false;
        }
    }
    if (!weights_ok || cfg.s < 0) return report;

    const FixedPointMultiset fps = enumerate_fixed_points(cfg);
    const std::int64_t available = max_cancelling_pairs(fps);
    if (available < cfg.s) {
        report.failures.push_back({FailureKind::InsufficientPairs,
                                   "need " + std::to_string(cfg.s) + " cancelling pairs, found " +
                                       std::to_string(available)});
        return report;
    }
    report.matching = select_disjoint_pairs(fps, static_cast<std::size_t>(cfg.s));
    return report;
}

FixedPointMultiset residual_data(const ActionConfiguration& cfg, const ManifoldInvariants& /*x*/,
                                 const std::vector<PointPair>& matching) {
    const FixedPointMultiset fps = enumerate_fixed_points(cfg);
    std::vector<bool> used(fps.points.size(), false);
    for (const auto& [i, j] : matching) {
        const std::string where = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (i >= fps.points.size() || j >= fps.points.size()) {
            throw Error(ErrorCode::BadMatching, where + " is out of range");
        }
        if (i == j || used[i] || used[j]) {
            throw Error(ErrorCode::BadMatching, where + " reuses a fixed point");
        }
        if (!is_cancelling_pair(fps.points[i], fps.points[j])) {
            throw Error(ErrorCode::BadMatching, where + " is not a cancelling pair");
        }
        used[i] = used[j] = true;
    }
    FixedPointMultiset out{cfg.p, {}};
    for (std::size_t k = 0; k < fps.points.size(); ++k) {
        if (!used[k]) out.points.push_back(fps.points[k]);
    }
    return out;
}

}  // namespace nonsmooth
