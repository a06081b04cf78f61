#include "nonsmooth/obstruction.hpp"

#include "nonsmooth/certificate_io.hpp"
#include "nonsmooth/error.hpp"

#include <algorithm>

namespace nonsmooth {

namespace {

void require_spin_form(const ManifoldInvariants& x) {
    if (!x.spin) throw Error(ErrorCode::NotSpin, to_string(x) + " is not spin");
    if (x.sigma() % 8 != 0) {
        throw Error(ErrorCode::SignatureNotDivisibleBy8,
                    "signature " + std::to_string(x.sigma()) + " is not divisible by 8");
    }
}

template <typename Count>
IndexValue index_with(const ActionConfiguration& cfg, const ManifoldInvariants& x, Count&& count) {
    require_spin_form(x);
    IndexValue v;
    for (const auto& w : cfg.alphas) v.sum_alpha += count(w);
    for (const auto& w : cfg.alpha_primes) v.sum_alpha_prime += count(w);
    v.sigma_term = x.sigma() / 8 * cfg.p.value();
    v.dim = v.sum_alpha - v.sum_alpha_prime - v.sigma_term;
    return v;
}

std::string window_text(const Verdict& v) {
    return "(" + std::to_string(v.lower) + ", " + std::to_string(v.upper) + ")";
}

}  // namespace

IndexValue invariant_index_dim(const ActionConfiguration& cfg, const ManifoldInvariants& x) {
    return index_with(cfg, x, [&](const WeightCP2& w) { return lattice_count(cfg.p, w); });
}

IndexValue invariant_index_dim(const ActionConfiguration& cfg, const ManifoldInvariants& x,
                               CountCache& cache) {
    return index_with(cfg, x, [&](const WeightCP2& w) { return cache.count(cfg.p, w); });
}

std::string to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::InsideWindow: return "InsideWindow";
        case VerdictKind::ViolatesUpper: return "ViolatesUpper";
        case VerdictKind::ViolatesLower: return "ViolatesLower";
        case VerdictKind::Inapplicable: return "Inapplicable";
    }
    return "?";
}

std::optional<VerdictKind> parse_verdict(const std::string& text) {
    for (auto k : {VerdictKind::InsideWindow, VerdictKind::ViolatesUpper,
                   VerdictKind::ViolatesLower, VerdictKind::Inapplicable}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

Verdict smoothness_window(std::int64_t dim, const ManifoldInvariants& x) {
    Verdict v{VerdictKind::InsideWindow, -x.b2_minus, x.b2_plus};
    if (!x.spin || x.b2_plus == 0 || x.b2_minus == 0) {
        v.kind = VerdictKind::Inapplicable;
    } else if (dim >= x.b2_plus) {
        v.kind = VerdictKind::ViolatesUpper;
    } else if (dim <= -x.b2_minus) {
        v.kind = VerdictKind::ViolatesLower;
    }
    return v;
}

Evaluation evaluate(const ActionConfiguration& cfg, const ManifoldInvariants& oriented,
                    EvaluateOptions options) {
    Evaluation ev;
    ev.report = check_realizable(cfg, oriented);
    for (const auto& f : ev.report.failures) {
        ev.reasons.push_back(to_string(f.kind) + ": " + f.detail);
    }

    const bool weights_ok = !ev.report.has_failure(FailureKind::InvalidWeight) &&
                            !ev.report.has_failure(FailureKind::ShapeMismatch);
    if (!weights_ok) return ev;
    try {
        ev.index = options.cache ? invariant_index_dim(cfg, oriented, *options.cache)
                                 : invariant_index_dim(cfg, oriented);
    } catch (const Error& e) {
        ev.reasons.emplace_back(e.what());
        return ev;
    }
    ev.verdict = smoothness_window(ev.index->dim, oriented);
    if (!ev.verdict->violates()) {
        ev.reasons.push_back("dim " + std::to_string(ev.index->dim) + " is " +
                             to_string(ev.verdict->kind) + " for window " +
                             window_text(*ev.verdict));
        return ev;
    }
    if (!ev.report.realizable()) return ev;

    Certificate cert{
        .manifold = options.orientation_flipped ? oriented.reversed() : oriented,
        .orientation_flipped = options.orientation_flipped,
        .config = cfg,
        .matching = *ev.report.matching,
        .index = *ev.index,
        .verdict = *ev.verdict,
    };
    seal(cert);
    ev.certificate = std::move(cert);
    return ev;
}

bool VerificationResult::has(const std::string& code) const noexcept {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

VerificationResult verify_certificate(const Certificate& cert) {
    VerificationResult out;
    auto fail = [&](std::string code, std::string detail) {
        out.diagnostics.push_back({std::move(code), std::move(detail)});
    };

    if (compute_digest(cert) != cert.digest) {
        fail("IntegrityMismatch", "digest does not match certificate contents");
    }

    const ManifoldInvariants x = cert.oriented_manifold();
    const ActionConfiguration& cfg = cert.config;
    const OddPrime& p = cfg.p;

    if (x.b2_plus < 0 || x.b2_minus < 0) fail("ManifoldInvalid", "negative Betti number");
    if (!x.spin) fail("NotSpin", "the window needs a spin manifold");
    if (x.sigma() % 8 != 0) {
        fail("SignatureNotDivisibleBy8", "sigma = " + std::to_string(x.sigma()));
    }

    bool shape_ok = cfg.m >= 0 && cfg.m_prime >= 0 && cfg.r >= 0 && cfg.s >= 0 &&
                    cfg.alphas.size() == static_cast<std::size_t>(cfg.m) &&
                    cfg.alpha_primes.size() == static_cast<std::size_t>(cfg.m_prime) &&
                    cfg.betas.size() == static_cast<std::size_t>(cfg.r);
    if (!shape_ok) fail("ShapeMismatch", "weight lists disagree with (m, m', r, s)");

    bool weights_ok = true;
    auto check_cp2 = [&](const std::vector<WeightCP2>& ws, const char* what) {
        for (const auto& w : ws) {
            if (!is_valid_cp2(p, w)) {
                fail("InvalidWeight", std::string(what) + " weight " + to_string(w));
                weights_ok = false;
            }
        }
    };
    check_cp2(cfg.alphas, "CP2");
    check_cp2(cfg.alpha_primes, "CP2bar");
    for (const auto& w : cfg.betas) {
        if (!is_valid_s4(p, w)) {
            fail("InvalidWeight", "S4 weight " + to_string(w));
            weights_ok = false;
        }
    }

    if (cfg.m - cfg.m_prime != x.sigma()) {
        fail("SignatureMismatch", "m - m' != sigma");
    }
    if (3 * (cfg.m + cfg.m_prime) + 2 * cfg.r - 2 * cfg.s != x.chi()) {
        fail("EulerMismatch", "3(m+m') + 2r - 2s != chi");
    }

    if (weights_ok) {
        const FixedPointMultiset fps = enumerate_fixed_points(cfg);
        if (cert.matching.size() != static_cast<std::size_t>(std::max<std::int64_t>(cfg.s, 0))) {
            fail("BadMatching", "matching has " + std::to_string(cert.matching.size()) +
                                    " pairs, s = " + std::to_string(cfg.s));
        }
        std::vector<bool> used(fps.points.size(), false);
        for (const auto& [i, j] : cert.matching) {
            const std::string where = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (i >= fps.points.size() || j >= fps.points.size() || i == j) {
                fail("BadMatching", where + " is not a pair of distinct fixed points");
                continue;
            }
            if (used[i] || used[j]) fail("BadMatching", where + " reuses a fixed point");
            used[i] = used[j] = true;
            if (!is_cancelling_pair(fps.points[i], fps.points[j])) {
                fail("BadMatching", where + " is not a cancelling pair: " +
                                        to_string(fps.points[i].cls) + " vs " +
                                        to_string(fps.points[j].cls));
            }
        }
    }

    if (weights_ok && x.spin && x.sigma() % 8 == 0) {
        IndexValue expect;
        for (const auto& w : cfg.alphas) expect.sum_alpha += lattice_count(p, w);
        for (const auto& w : cfg.alpha_primes) expect.sum_alpha_prime += lattice_count(p, w);
        expect.sigma_term = x.sigma() / 8 * p.value();
        expect.dim = expect.sum_alpha - expect.sum_alpha_prime - expect.sigma_term;
        if (!(expect == cert.index)) {
            fail("IndexMismatch", "recomputed dim " + std::to_string(expect.dim) + " (" +
                                      std::to_string(expect.sum_alpha) + " - " +
                                      std::to_string(expect.sum_alpha_prime) + " - " +
                                      std::to_string(expect.sigma_term) + "), certificate says " +
                                      std::to_string(cert.index.dim));
        }
        const Verdict v = smoothness_window(expect.dim, x);
        if (!(v == cert.verdict)) {
            fail("VerdictMismatch", "recomputed " + to_string(v.kind) + " for window " +
                                        window_text(v) + ", certificate says " +
                                        to_string(cert.verdict.kind));
        }
        if (!v.violates()) fail("NoViolation", "dim lies inside the window or it is inapplicable");
    }

    out.accepted = out.diagnostics.empty();
    return out;
}

}  // namespace nonsmooth
