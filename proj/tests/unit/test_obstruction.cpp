#include "doctest.h"
#include "oracles.hpp"

#include "nonsmooth/certificate_io.hpp"
#include "nonsmooth/error.hpp"
#include "nonsmooth/search.hpp"

#include <random>

#include "json.hpp"

using namespace nonsmooth;

namespace {

const ManifoldInvariants kK3{3, 19, true};

ActionConfiguration k3_config() {
    const WeightCP2 cycle[] = {{{-1, 1, 2}}, {{-1, 2, 3}}, {{-1, 3, 4}}, {{-2, 2, 4}}};
    ActionConfiguration cfg{OddPrime(11)};
    cfg.m_prime = 16;
    cfg.s = 12;
    for (int j = 0; j < 16; ++j) cfg.alpha_primes.push_back(cycle[j % 4]);
    return cfg;
}

ActionConfiguration two_copies(std::int64_t p) {
    ActionConfiguration cfg{OddPrime(p)};
    cfg.m = cfg.m_prime = 1;
    cfg.alphas = {WeightCP2{{-1, 0, 1}}};
    cfg.alpha_primes = {WeightCP2{{-1, 1, 2}}};
    return cfg;
}

Certificate k3_certificate() {
    auto ev = evaluate(k3_config(), kK3);
    REQUIRE(ev.certificate.has_value());
    return *ev.certificate;
}

}  // namespace

TEST_SUITE("obstruction") {

TEST_CASE("invariant index") {
    const auto k3 = invariant_index_dim(k3_config(), kK3);
    CHECK(k3.dim == 6);
    CHECK(k3.sum_alpha == 0);
    CHECK(k3.sum_alpha_prime == 16);
    CHECK(k3.sigma_term == -22);

    CHECK(invariant_index_dim(two_copies(7), {2, 2, true}).dim == 2);

    ActionConfiguration same = two_copies(13);
    same.alpha_primes = same.alphas;
    CHECK(invariant_index_dim(same, {2, 2, true}).dim == 0);

    CHECK_THROWS_AS(invariant_index_dim(two_copies(7), {2, 2, false}), Error);
    try {
        invariant_index_dim(two_copies(7), {4, 0, true});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SignatureNotDivisibleBy8);
    }

    CountCache cache;
    CHECK(invariant_index_dim(k3_config(), kK3, cache) == k3);
}

TEST_CASE("reversing the orientation negates the index") {
    std::mt19937_64 rng(11);
    for (auto pv : {7, 11, 13, 29, 31}) {
        const OddPrime p(pv);
        for (int i = 0; i < 10; ++i) {
            const ManifoldInvariants x{3 + 8 * static_cast<std::int64_t>(rng() % 3), 3, true};
            ActionConfiguration cfg{p};
            cfg.m = x.sigma() + 1;
            cfg.m_prime = 1;
            for (std::int64_t j = 0; j < cfg.m; ++j) {
                const std::int64_t a = static_cast<std::int64_t>(rng() % 5);
                cfg.alphas.push_back(WeightCP2{{-1, a, a + 1 + 2 * static_cast<std::int64_t>(rng() % 2)}});
            }
            cfg.alpha_primes = {WeightCP2{{-1, 1, 2}}};
            bool valid = true;
            for (const auto& w : cfg.alphas) valid = valid && is_valid_cp2(p, w);
            if (!valid) continue;
            CHECK(invariant_index_dim(reverse_orientation(cfg), x.reversed()).dim ==
                  -invariant_index_dim(cfg, x).dim);
        }
    }
}

TEST_CASE("smoothness window") {
    CHECK(smoothness_window(6, kK3).kind == VerdictKind::ViolatesUpper);
    CHECK(smoothness_window(3, kK3).kind == VerdictKind::ViolatesUpper);
    CHECK(smoothness_window(2, kK3).kind == VerdictKind::InsideWindow);
    CHECK(smoothness_window(0, kK3).kind == VerdictKind::InsideWindow);
    CHECK(smoothness_window(-18, kK3).kind == VerdictKind::InsideWindow);
    CHECK(smoothness_window(-19, kK3).kind == VerdictKind::ViolatesLower);
    CHECK(smoothness_window(6, {3, 19, false}).kind == VerdictKind::Inapplicable);
    CHECK(smoothness_window(6, {0, 16, true}).kind == VerdictKind::Inapplicable);
    const Verdict v = smoothness_window(0, kK3);
    CHECK(v.lower == -19);
    CHECK(v.upper == 3);
    for (auto k : {VerdictKind::InsideWindow, VerdictKind::ViolatesUpper, VerdictKind::ViolatesLower,
                   VerdictKind::Inapplicable}) {
        CHECK(parse_verdict(to_string(k)) == k);
    }
    CHECK_FALSE(parse_verdict("violates").has_value());
}

TEST_CASE("evaluate") {
    const Certificate cert = k3_certificate();
    CHECK(cert.index.dim == 6);
    CHECK(cert.verdict.kind == VerdictKind::ViolatesUpper);
    CHECK(cert.matching.size() == 12);
    CHECK(verify_certificate(cert).accepted);

    // Realizable but inside the window.
    ActionConfiguration cfg = two_copies(5);
    const auto none = evaluate(cfg, {2, 2, true});
    CHECK_FALSE(none.found());
    REQUIRE(none.verdict.has_value());
    CHECK(none.verdict->kind == VerdictKind::InsideWindow);
    CHECK_FALSE(none.reasons.empty());

    // A sphere always brings its own cancelling pair, so extra spheres keep
    // the pattern realizable. Replacing one conj-CP2 weight breaks it.
    ActionConfiguration unreal = k3_config();
    bool broke = false;
    for (std::int64_t b = 2; b < 11 && !broke; ++b) {
        unreal.alpha_primes[0] = WeightCP2{{0, b, b + 2}};
        if (!is_valid_cp2(unreal.p, unreal.alpha_primes[0])) continue;
        const auto refused = evaluate(unreal, kK3);
        if (refused.report.has_failure(FailureKind::InsufficientPairs)) {
            CHECK_FALSE(refused.found());
            broke = true;
        }
    }
    CHECK(broke);
}

TEST_CASE("p = 5 gives dim 3 sigma / 8") {
    const OddPrime five(5);
    std::mt19937_64 rng(55);
    int realizable = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::int64_t bp = 1 + static_cast<std::int64_t>(rng() % 30);
        std::int64_t bm = bp + 8 * (static_cast<std::int64_t>(rng() % 5) - 2);
        if (bm < 1) continue;
        const ManifoldInvariants x{bp, bm, true};
        ActionConfiguration cfg{five};
        cfg.m = static_cast<std::int64_t>(rng() % 4) + std::max<std::int64_t>(0, x.sigma());
        cfg.m_prime = cfg.m - x.sigma();
        const std::int64_t diff = (x.chi() - 3 * (cfg.m + cfg.m_prime)) / 2;
        cfg.s = static_cast<std::int64_t>(rng() % 3) + std::max<std::int64_t>(0, -diff);
        cfg.r = cfg.s + diff;
        auto pick = [&] {
            for (;;) {
                const WeightCP2 w{{static_cast<std::int64_t>(rng() % 9) - 4,
                                   static_cast<std::int64_t>(rng() % 9) - 4,
                                   static_cast<std::int64_t>(rng() % 9) - 4}};
                if (is_valid_cp2(five, w)) return w;
            }
        };
        for (std::int64_t i = 0; i < cfg.m; ++i) cfg.alphas.push_back(pick());
        for (std::int64_t i = 0; i < cfg.m_prime; ++i) cfg.alpha_primes.push_back(pick());
        cfg.betas.assign(static_cast<std::size_t>(cfg.r), WeightS4{{1, 3}});
        const auto ev = evaluate(cfg, x);
        if (!ev.report.realizable()) continue;
        ++realizable;
        CHECK(8 * ev.index->dim == 3 * x.sigma());
        CHECK(ev.verdict->kind == VerdictKind::InsideWindow);
        CHECK_FALSE(ev.found());
    }
    CHECK(realizable > 100);
}

TEST_CASE("JSON round trip") {
    for (const auto& cert : oracle::sample_certificates()) {
        const std::string text = certificate_to_json(cert);
        const Certificate back = certificate_from_json(text);
        CHECK(back.digest == cert.digest);
        CHECK(back.config == cert.config);
        CHECK(back.matching == cert.matching);
        CHECK(back.index == cert.index);
        CHECK(back.verdict == cert.verdict);
        CHECK(back.manifold == cert.manifold);
        CHECK(certificate_to_json(back) == text);
        CHECK(verify_certificate_json(text).accepted);
        CHECK(oracle::accepts(text));
    }
}

TEST_CASE("schema field names") {
    const auto j = nlohmann::json::parse(certificate_to_json(k3_certificate()));
    for (const char* key : {"p", "manifold", "config", "cp2_weights", "cp2bar_weights", "s4_weights",
                            "matching", "index", "verdict", "orientation_flipped", "digest"}) {
        CHECK_MESSAGE(j.contains(key), key);
    }
    for (const char* key : {"b2_plus", "b2_minus", "spin"}) CHECK(j["manifold"].contains(key));
    for (const char* key : {"m", "m_prime", "r", "s"}) CHECK(j["config"].contains(key));
    for (const char* key : {"dim", "sum_alpha", "sum_alpha_prime"}) CHECK(j["index"].contains(key));
    CHECK(j["verdict"] == "ViolatesUpper");
}

TEST_CASE("tampering is diagnosed") {
    Certificate dim = k3_certificate();
    dim.index.dim = 2;
    auto r = verify_certificate(dim);
    CHECK_FALSE(r.accepted);
    CHECK(r.has("IndexMismatch"));
    CHECK(r.has("IntegrityMismatch"));

    seal(dim);  // a forger who recomputes the digest still fails
    r = verify_certificate(dim);
    CHECK_FALSE(r.accepted);
    CHECK(r.has("IndexMismatch"));
    CHECK_FALSE(r.has("IntegrityMismatch"));

    Certificate swapped = k3_certificate();
    const auto fps = enumerate_fixed_points(swapped.config);
    for (std::size_t j = 1; j < fps.points.size(); ++j) {
        if (!is_cancelling_pair(fps.points[swapped.matching[0].first], fps.points[j])) {
            swapped.matching[0].second = j;
            break;
        }
    }
    seal(swapped);
    r = verify_certificate(swapped);
    CHECK_FALSE(r.accepted);
    CHECK(r.has("BadMatching"));

    Certificate verdict = k3_certificate();
    verdict.verdict.kind = VerdictKind::ViolatesLower;
    seal(verdict);
    CHECK(verify_certificate(verdict).has("VerdictMismatch"));
}

TEST_CASE("verifier agrees with the oracle on re-sealed mutations") {
    // The digest catches every edit; re-sealing removes that line of defence
    // and checks the semantic checks alone. A re-sealed mutation may be a
    // genuinely valid certificate, so the verdict is compared to the oracle.
    std::mt19937_64 rng(4242);
    const auto pool = oracle::sample_certificates();
    int rejected = 0;
    for (int i = 0; i < 600; ++i) {
        const std::string original = certificate_to_json(pool[i % pool.size()]);
        std::string field;
        const std::string mutated = oracle::mutate(original, rng, &field);
        CHECK_MESSAGE(!verify_certificate_json(mutated).accepted, field);
        if (field == "/digest") continue;
        std::optional<Certificate> resealed;
        try {
            resealed = certificate_from_json(mutated);
        } catch (const Error&) {
            CHECK_FALSE(oracle::accepts(mutated));
            ++rejected;
            continue;
        }
        seal(*resealed);
        const bool library = verify_certificate(*resealed).accepted;
        rejected += !library;
        CHECK_MESSAGE(library == oracle::accepts(certificate_to_json(*resealed)), field);
    }
    CHECK(rejected > 300);
}

TEST_CASE("malformed documents") {
    const std::string good = certificate_to_json(k3_certificate());
    CHECK_THROWS_AS(certificate_from_json("{"), Error);
    CHECK_THROWS_AS(certificate_from_json("[]"), Error);
    auto j = nlohmann::json::parse(good);
    j.erase("index");
    try {
        certificate_from_json(j.dump());
        FAIL("expected Malformed");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Malformed);
    }
    j = nlohmann::json::parse(good);
    j["p"] = 9;
    try {
        certificate_from_json(j.dump());
        FAIL("expected NotPrime");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPrime);
    }
    j = nlohmann::json::parse(good);
    j["cp2bar_weights"][0] = {1, 2};
    CHECK_THROWS_AS(certificate_from_json(j.dump()), Error);
    j = nlohmann::json::parse(good);
    j["matching"][0][0] = -1;
    CHECK_THROWS_AS(certificate_from_json(j.dump()), Error);
    const auto rejected = verify_certificate_json("not json");
    CHECK_FALSE(rejected.accepted);
    CHECK(rejected.has("Malformed"));
}

TEST_CASE("configuration files") {
    const auto text = configuration_to_json(kK3, k3_config());
    const auto file = configuration_from_json(text);
    CHECK(file.manifold == kK3);
    CHECK(file.config == k3_config());
    CHECK_FALSE(nlohmann::json::parse(text).contains("matching"));
}

}
