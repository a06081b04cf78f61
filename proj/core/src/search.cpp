#include "nonsmooth/search.hpp"

#include "nonsmooth/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>
#include <tuple>

namespace nonsmooth {

namespace {

const WeightCP2 kZeroOne{{-1, 0, 1}};
const WeightCP2 kOneTwo{{-1, 1, 2}};
const WeightS4 kDefaultSphere{{1, 2}};

void require_spin_form(const ManifoldInvariants& x) {
    if (!x.spin) throw Error(ErrorCode::NotSpin, to_string(x) + " is not spin");
    if (x.sigma() % 8 != 0) {
        throw Error(ErrorCode::SignatureNotDivisibleBy8,
                    "signature " + std::to_string(x.sigma()) + " is not divisible by 8");
    }
}

// Orientation with sigma <= 0.
struct Oriented {
    ManifoldInvariants x;
    bool flipped;
};

Oriented orient_nonpositive(const ManifoldInvariants& x) {
    if (x.sigma() > 0) return {x.reversed(), true};
    return {x, false};
}

std::vector<WeightS4> spheres(std::int64_t r) {
    return std::vector<WeightS4>(static_cast<std::size_t>(r), kDefaultSphere);
}

void add_rokhlin_note(const ManifoldInvariants& x, SearchOutcome& out) {
    if (rokhlin_excludes_smooth(x)) {
        out.notes.push_back("signature " + std::to_string(x.sigma()) +
                            " is not divisible by 16: X has no smooth structure, so the "
                            "conclusion holds vacuously");
    }
}

// Folds one evaluation into an outcome: the first certificate wins, and
// otherwise the largest |dim| seen is kept.
void absorb(SearchOutcome& out, Evaluation ev, const std::string& family) {
    if (out.found()) return;
    if (ev.certificate) {
        out.dim = ev.certificate->index.dim;
        out.family = family;
        out.certificate = std::move(ev.certificate);
        return;
    }
    if (ev.index && (!out.dim || std::llabs(ev.index->dim) > std::llabs(*out.dim))) {
        out.dim = ev.index->dim;
    }
    for (auto& r : ev.reasons) out.notes.push_back(family + ": " + r);
}

}  // namespace

PrimeBound prime_bound(const ManifoldInvariants& x) {
    const std::int64_t b2max = std::max(x.b2_plus, x.b2_minus);
    return {b2max, 12 * ((b2max + 1) / 2) - 5};
}

bool rokhlin_excludes_smooth(const ManifoldInvariants& x) noexcept {
    return x.spin && x.sigma() % 16 != 0;
}

std::vector<Candidate> general_candidates(const ManifoldInvariants& x, const OddPrime& p) {
    require_spin_form(x);
    if ((x.b2_plus == 0 && x.b2_minus == 0) || (x.b2_plus == 1 && x.b2_minus == 1)) {
        throw Error(ErrorCode::ExcludedManifold,
                    to_string(x) + " is S^4 or S^2 x S^2, which the construction excludes");
    }
    const auto [y, flipped] = orient_nonpositive(x);
    const std::int64_t sigma = y.sigma();
    const std::int64_t chi = y.chi();
    const std::int64_t chain_length = -sigma;

    std::vector<WeightCP2> chain;
    chain.reserve(static_cast<std::size_t>(chain_length));
    for (std::int64_t j = 1; j <= chain_length; ++j) {
        const std::int64_t rem = j % (p.value() - 3);
        chain.push_back(WeightCP2{{-1, rem, rem + 1}});
    }

    std::int64_t r = 0;
    std::int64_t s = 0;
    if (chi >= -3 * sigma + 6) {
        r = (3 * sigma - 6 + chi) / 2;
    } else {
        s = (-3 * sigma + 6 - chi) / 2;
        if (s > chain_length - 1) {
            throw Error(ErrorCode::VacuousByDonaldson,
                        "need " + std::to_string(s) + " cancelling pairs but the chain of " +
                            std::to_string(chain_length) + " components supplies " +
                            std::to_string(std::max<std::int64_t>(chain_length - 1, 0)) +
                            "; b2+ <= 2 with sigma < 0 admits no smooth spin structure");
        }
    }

    std::vector<Candidate> out;
    for (const auto& [free_cp2, free_cp2bar] : {std::pair{kZeroOne, kOneTwo}, std::pair{kOneTwo, kZeroOne}}) {
        ActionConfiguration cfg{p};
        cfg.m = 1;
        cfg.m_prime = chain_length + 1;
        cfg.r = r;
        cfg.s = s;
        cfg.alphas = {free_cp2};
        cfg.alpha_primes.push_back(free_cp2bar);
        cfg.alpha_primes.insert(cfg.alpha_primes.end(), chain.begin(), chain.end());
        cfg.betas = spheres(r);
        out.push_back({std::move(cfg), y, flipped, "lemma42:a0=" + to_string(free_cp2)});
    }
    return out;
}

SearchOutcome certify_general(const ManifoldInvariants& x, const OddPrime& p, CountCache* cache) {
    SearchOutcome out;
    out.family = "lemma42";
    for (const auto& c : general_candidates(x, p)) {
        absorb(out,
               evaluate(c.config, c.oriented,
                        {.orientation_flipped = c.orientation_flipped, .cache = cache}),
               c.family);
    }
    add_rokhlin_note(x, out);
    return out;
}

SearchOutcome certify_s2xs2_sum(std::int64_t n, const OddPrime& p) {
    SearchOutcome out;
    out.family = "thm13";
    if (n < 2) {
        out.notes.push_back("the connected-sum family needs n >= 2");
        return out;
    }
    const ManifoldInvariants x{n, n, true};
    ActionConfiguration cfg{p};
    cfg.m = (n + 1) / 3;
    cfg.m_prime = cfg.m;
    cfg.r = (n + 1) % 3;
    cfg.alphas.assign(static_cast<std::size_t>(cfg.m), kZeroOne);
    cfg.alpha_primes.assign(static_cast<std::size_t>(cfg.m), kOneTwo);
    cfg.betas = spheres(cfg.r);
    absorb(out, evaluate(cfg, x), out.family);
    return out;
}

SearchOutcome certify_k3_pattern(const ManifoldInvariants& x, const OddPrime& p) {
    SearchOutcome out;
    out.family = "thm14";
    require_spin_form(x);
    const auto [y, flipped] = orient_nonpositive(x);
    if (y.sigma() != -16 || y.b2_plus < 3) {
        out.notes.push_back("the K3 pattern needs sigma = -16 and b2+ >= 3 after orienting, got " +
                            to_string(y));
        return out;
    }
    static const WeightCP2 cycle[4] = {
        WeightCP2{{-1, 1, 2}}, WeightCP2{{-1, 2, 3}}, WeightCP2{{-1, 3, 4}}, WeightCP2{{-2, 2, 4}}};
    ActionConfiguration cfg{p};
    cfg.m = 0;
    cfg.m_prime = 16;
    cfg.r = y.b2_plus - 3;
    cfg.s = 12;
    for (int j = 0; j < 16; ++j) cfg.alpha_primes.push_back(cycle[j % 4]);
    cfg.betas = spheres(cfg.r);
    absorb(out, evaluate(cfg, y, {.orientation_flipped = flipped}), out.family);
    return out;
}

SearchOutcome certify_k3_stabilized(std::int64_t t) {
    if (t < 0) throw Error(ErrorCode::OutOfRange, "t must be non-negative");
    const ManifoldInvariants x{3 + t, 19 + t, true};
    const OddPrime p(11);
    SearchOutcome out = certify_k3_pattern(x, p);
    if (t > 3) {
        throw Error(ErrorCode::OutOfRange,
                    "t = " + std::to_string(t) + ": dim " +
                        (out.dim ? std::to_string(*out.dim) : std::string("?")) +
                        " lies inside the window (" + std::to_string(-x.b2_minus) + ", " +
                        std::to_string(x.b2_plus) + "), no violation");
    }
    return out;
}

namespace {

// Odometer over sequences of pool indices: lengths 1..max_len, each
// length in lexicographic order. A zero component count yields the single
// empty pattern.
class PatternCursor {
public:
    PatternCursor(std::size_t pool, std::int64_t count, std::int64_t max_len)
        : pool_(pool),
          max_len_(count == 0 ? 0 : static_cast<std::size_t>(std::min(count, max_len))),
          digits_(count == 0 ? 0 : 1, 0),
          done_(count != 0 && (pool == 0 || max_len_ == 0)) {}

    bool done() const noexcept { return done_; }
    const std::vector<std::size_t>& pattern() const noexcept { return digits_; }

    void next() {
        if (digits_.empty()) {
            done_ = true;
            return;
        }
        for (std::size_t i = digits_.size(); i-- > 0;) {
            if (++digits_[i] < pool_) return;
            digits_[i] = 0;
        }
        if (digits_.size() == max_len_) {
            done_ = true;
        } else {
            digits_.assign(digits_.size() + 1, 0);
        }
    }

private:
    std::size_t pool_;
    std::size_t max_len_;
    std::vector<std::size_t> digits_;
    bool done_;
};

std::int64_t cyclic_sum(const std::vector<std::size_t>& pattern, std::int64_t count,
                        const std::vector<std::int64_t>& counts) {
    if (pattern.empty()) return 0;
    const auto len = static_cast<std::int64_t>(pattern.size());
    std::int64_t full = 0;
    for (auto i : pattern) full += counts[i];
    std::int64_t total = (count / len) * full;
    for (std::int64_t i = 0; i < count % len; ++i) total += counts[pattern[static_cast<std::size_t>(i)]];
    return total;
}

std::vector<WeightCP2> cycled(const std::vector<std::size_t>& pattern, std::int64_t count,
                              const std::vector<WeightCP2>& pool) {
    std::vector<WeightCP2> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        out.push_back(pool[pattern[static_cast<std::size_t>(i) % pattern.size()]]);
    }
    return out;
}

struct Decomposition {
    std::int64_t m, m_prime, r, s;
};

}  // namespace

BoundedSearchResult bounded_search(const ManifoldInvariants& x, const OddPrime& p,
                                   const SearchLimits& limits) {
    require_spin_form(x);
    const auto [y, flipped] = orient_nonpositive(x);

    std::vector<WeightCP2> pool;
    for (std::int64_t a = 0; a <= limits.pool_limit; ++a) {
        for (std::int64_t d = 1; d <= limits.pool_limit; ++d) {
            const WeightCP2 w{{-1, a, a + d}};
            if (is_valid_cp2(p, w)) pool.push_back(w);
        }
    }
    std::sort(pool.begin(), pool.end());

    std::vector<Decomposition> decomps;
    for (std::int64_t m = 0; m <= limits.max_cp2; ++m) {
        const std::int64_t m_prime = m - y.sigma();
        const std::int64_t diff = (y.chi() - 3 * (m + m_prime)) / 2;  // r - s
        const std::int64_t r0 = std::max<std::int64_t>(0, diff);
        for (std::int64_t r = r0; r <= r0 + limits.extra_spheres; ++r) {
            decomps.push_back({m, m_prime, r, r - diff});
        }
    }
    std::sort(decomps.begin(), decomps.end(), [](const Decomposition& a, const Decomposition& b) {
        return std::tuple(a.m + a.m_prime + a.r, a.m, a.r) <
               std::tuple(b.m + b.m_prime + b.r, b.m, b.r);
    });
    if (pool.empty() || decomps.empty()) {
        throw Error(ErrorCode::LimitsTooSmall, "no candidate weights or decompositions at p=" +
                                                   std::to_string(p.value()));
    }

    CountCache cache;
    std::vector<std::int64_t> counts;
    counts.reserve(pool.size());
    for (const auto& w : pool) counts.push_back(cache.count(p, w));
    const std::int64_t sigma_term = y.sigma() / 8 * p.value();

    BoundedSearchResult result;
    for (const auto& dc : decomps) {
        for (PatternCursor a(pool.size(), dc.m, limits.max_cp2_pattern); !a.done(); a.next()) {
            const std::int64_t sum_a = cyclic_sum(a.pattern(), dc.m, counts);
            for (PatternCursor b(pool.size(), dc.m_prime, limits.max_cp2bar_pattern); !b.done();
                 b.next()) {
                if (result.examined >= limits.max_candidates) {
                    result.exhausted_budget = true;
                    return result;
                }
                ++result.examined;
                const std::int64_t dim = sum_a - cyclic_sum(b.pattern(), dc.m_prime, counts) - sigma_term;
                const Verdict v = smoothness_window(dim, y);
                if (!v.violates() && result.extremal_dim &&
                    std::llabs(dim) <= std::llabs(*result.extremal_dim)) {
                    continue;
                }
                ActionConfiguration cfg{p};
                cfg.m = dc.m;
                cfg.m_prime = dc.m_prime;
                cfg.r = dc.r;
                cfg.s = dc.s;
                cfg.alphas = cycled(a.pattern(), dc.m, pool);
                cfg.alpha_primes = cycled(b.pattern(), dc.m_prime, pool);
                cfg.betas = spheres(dc.r);
                if (max_cancelling_pairs(enumerate_fixed_points(cfg)) < dc.s) continue;

                if (!result.extremal_dim || std::llabs(dim) > std::llabs(*result.extremal_dim)) {
                    result.extremal_dim = dim;
                }
                if (v.violates()) {
                    Evaluation ev =
                        evaluate(cfg, y, {.orientation_flipped = flipped, .cache = &cache});
                    if (ev.certificate) {
                        result.certificate = std::move(ev.certificate);
                        return result;
                    }
                }
            }
        }
    }
    return result;
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::General: return "lemma42";
        case Strategy::S2xS2Sum: return "thm13";
        case Strategy::K3Pattern: return "thm14";
        case Strategy::Bounded: return "bounded";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(const std::string& name) {
    for (auto s : {Strategy::General, Strategy::S2xS2Sum, Strategy::K3Pattern, Strategy::Bounded}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

SearchOutcome certify(const ManifoldInvariants& x, const OddPrime& p, Strategy strategy,
                      const CertifyOptions& options) {
    SearchOutcome out;
    out.family = to_string(strategy);
    try {
        switch (strategy) {
            case Strategy::General:
                out = certify_general(x, p, options.cache);
                break;
            case Strategy::S2xS2Sum:
                if (x.spin && x.b2_plus == x.b2_minus) {
                    out = certify_s2xs2_sum(x.b2_plus, p);
                } else {
                    out.notes.push_back("thm13 applies only to #^n(S^2 x S^2)");
                }
                break;
            case Strategy::K3Pattern:
                out = certify_k3_pattern(x, p);
                break;
            case Strategy::Bounded: {
                BoundedSearchResult r = bounded_search(x, p, options.limits);
                out.dim = r.certificate ? std::optional(r.certificate->index.dim) : r.extremal_dim;
                out.certificate = std::move(r.certificate);
                out.notes.push_back("examined " + std::to_string(r.examined) + " candidates" +
                                    (r.exhausted_budget ? " (budget exhausted)" : ""));
                break;
            }
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::LimitsTooSmall) throw;
        out.notes.emplace_back(e.what());
    }
    if (out.certificate) {
        const VerificationResult check = verify_certificate(*out.certificate);
        if (!check.accepted) {
            for (const auto& d : check.diagnostics) {
                out.notes.push_back("dropped certificate: " + d.code + ": " + d.detail);
            }
            out.certificate.reset();
        }
    }
    return out;
}

std::vector<SweepRow> prime_sweep(const ManifoldInvariants& x, std::int64_t lo, std::int64_t hi,
                                  Strategy strategy, const SweepOptions& options) {
    std::vector<std::int64_t> primes;
    for (std::int64_t n = std::max<std::int64_t>(lo, 5); n <= hi; ++n) {
        if (is_prime(n)) primes.push_back(n);
    }
    std::vector<SweepRow> rows(primes.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        CountCache cache;
        for (std::size_t i = next++; i < primes.size(); i = next++) {
            const auto start = std::chrono::steady_clock::now();
            SweepRow& row = rows[i];
            row.p = primes[i];
            row.family = to_string(strategy);
            try {
                SearchOutcome o = certify(x, OddPrime(primes[i]), strategy,
                                          {.limits = options.limits, .cache = &cache});
                row.found = o.found();
                row.dim = o.dim;
                if (!o.family.empty()) row.family = o.family;
                row.certificate = std::move(o.certificate);
            } catch (const Error&) {
                row.found = false;
            }
            row.runtime_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        }
    };

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(primes.size(), 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing) {
    out << "p,found,dim,family,runtime_ms\n";
    for (const auto& row : rows) {
        out << row.p << ',' << (row.found ? "true" : "false") << ',';
        if (row.dim) out << *row.dim;
        out << ',' << row.family << ',';
        if (timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", row.runtime_ms);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace nonsmooth
