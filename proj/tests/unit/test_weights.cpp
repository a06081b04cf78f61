#include "doctest.h"
#include "oracles.hpp"

#include "nonsmooth/error.hpp"
#include "nonsmooth/weights.hpp"

#include <numeric>
#include <random>

using namespace nonsmooth;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::Malformed;
}

std::vector<std::int64_t> primes_up_to(std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 5; n <= hi; ++n) {
        if (oracle::prime(n)) out.push_back(n);
    }
    return out;
}

WeightCP2 random_weight(const OddPrime& p, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> entry(-3 * p.value(), 3 * p.value());
    for (;;) {
        const WeightCP2 w{{entry(rng), entry(rng), entry(rng)}};
        if (is_valid_cp2(p, w)) return w;
    }
}

}  // namespace

TEST_SUITE("weights_counting") {

TEST_CASE("odd primes start at 5") {
    CHECK(OddPrime(5).value() == 5);
    CHECK(OddPrime(199).value() == 199);
    for (std::int64_t n : {-7, 0, 1, 2, 3, 4, 9, 15, 91, 121}) {
        CHECK(code_of([&] { OddPrime{n}; }) == ErrorCode::NotPrime);
    }
    for (std::int64_t n = 0; n < 500; ++n) CHECK(is_prime(n) == oracle::prime(n));
}

TEST_CASE("CP2 weight validation") {
    const OddPrime seven(7);
    CHECK(validate_weight_cp2(seven, {-1, 0, 1}) == WeightCP2{{-1, 0, 1}});
    CHECK(code_of([&] { validate_weight_cp2(seven, {0, 7, 1}); }) == ErrorCode::CongruentEntries);
    CHECK(code_of([&] { validate_weight_cp2(OddPrime(5), {0, 1, 2}); }) == ErrorCode::OddTotal);
    CHECK(code_of([&] { validate_weight_cp2(seven, {INT64_MAX, 0, 1}); }) == ErrorCode::Overflow);
    // Lifts are kept as given.
    CHECK(validate_weight_cp2(seven, {13, 0, 1}).a == std::array<std::int64_t, 3>{13, 0, 1});
}

TEST_CASE("S4 weight validation") {
    const OddPrime seven(7);
    CHECK(validate_weight_s4(seven, {1, 2}) == WeightS4{{1, 2}});
    CHECK(code_of([&] { validate_weight_s4(seven, {7, 2}); }) == ErrorCode::ZeroEntry);
    CHECK(validate_weight_s4(OddPrime(11), {2, 1}) == WeightS4{{2, 1}});
    CHECK_FALSE(is_valid_s4(seven, WeightS4{{-14, 3}}));
}

TEST_CASE("lattice counts from the worked cases") {
    CHECK(lattice_count(OddPrime(11), WeightCP2{{-1, 1, 2}}) == 1);
    CHECK(lattice_count(OddPrime(11), WeightCP2{{-1, 2, 3}}) == 1);
    CHECK(lattice_count(OddPrime(11), WeightCP2{{-1, 3, 4}}) == 1);
    CHECK(lattice_count(OddPrime(11), WeightCP2{{-2, 2, 4}}) == 1);
    CHECK(lattice_count(OddPrime(13), WeightCP2{{-1, 0, 1}}) == 3);
    CHECK(lattice_count(OddPrime(7), WeightCP2{{-1, 0, 3}}) == 2);
    CHECK(code_of([] { lattice_count(OddPrime(7), WeightCP2{{0, 7, 1}}); }) ==
          ErrorCode::InvalidWeight);
}

TEST_CASE("lattice count agrees with the generating-function oracle") {
    std::mt19937_64 rng(17);
    for (auto pv : primes_up_to(73)) {
        const OddPrime p(pv);
        for (int i = 0; i < 8; ++i) {
            const WeightCP2 w = random_weight(p, rng);
            CHECK_MESSAGE(lattice_count(p, w) == oracle::count(pv, w.a), "p=", pv, " ", to_string(w));
        }
    }
}

TEST_CASE("closed forms") {
    CHECK(closed_form_count(OddPrime(7), CountFamily::MinusOneZeroOne) == 2);
    CHECK(closed_form_count(OddPrime(17), CountFamily::MinusOneOneTwo) == 2);
    CHECK(closed_form_count(OddPrime(13), CountFamily::MinusOneOneTwo) == 1);
    CHECK(code_of([] { closed_form_count(OddPrime(13), WeightCP2{{-1, 2, 3}}); }) ==
          ErrorCode::UnsupportedFamily);
    // Exact lifts decide the family: (1, 2, -1) is a permutation, not the family.
    CHECK_FALSE(family_of(WeightCP2{{1, 2, -1}}).has_value());

    for (auto pv : primes_up_to(199)) {
        const OddPrime p(pv);
        const auto [l, q] = split_mod_twelve(p);
        CHECK(12 * l + q == pv);
        const auto a = lattice_count(p, WeightCP2{{-1, 0, 1}});
        const auto b = lattice_count(p, WeightCP2{{-1, 1, 2}});
        CHECK(a == closed_form_count(p, CountFamily::MinusOneZeroOne));
        CHECK(b == closed_form_count(p, CountFamily::MinusOneOneTwo));
        CHECK(a - b == 2 * l);
    }
}

TEST_CASE("residue spectrum") {
    const auto s7 = residue_spectrum(OddPrime(7), WeightCP2{{-1, 0, 1}});
    CHECK(s7.size() == 7);
    CHECK(std::accumulate(s7.begin(), s7.end(), std::int64_t{0}) == 6);

    const auto s11 = residue_spectrum(OddPrime(11), WeightCP2{{-1, 1, 2}});
    CHECK(s11[0] == 1);
    CHECK(std::accumulate(s11.begin(), s11.end(), std::int64_t{0}) == 15);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto primes = primes_up_to(61);
        const OddPrime p(primes[rng() % primes.size()]);
        const WeightCP2 w = random_weight(p, rng);
        const auto s = residue_spectrum(p, w);
        CHECK(std::accumulate(s.begin(), s.end(), std::int64_t{0}) == (p * p - 1) / 8);
        CHECK(s[0] == lattice_count(p, w));
    }
}

TEST_CASE("count invariances") {
    std::mt19937_64 rng(99);
    for (auto pv : primes_up_to(60)) {
        const OddPrime p(pv);
        for (int i = 0; i < 6; ++i) {
            const WeightCP2 w = random_weight(p, rng);
            const auto n = lattice_count(p, w);
            auto a = w.a;
            std::sort(a.begin(), a.end());
            do {
                CHECK(lattice_count(p, WeightCP2{a}) == n);
            } while (std::next_permutation(a.begin(), a.end()));

            const std::int64_t c = 2 * static_cast<std::int64_t>(rng() % 50) - 50;
            CHECK(lattice_count(p, WeightCP2{{w.a[0] + c, w.a[1] + c, w.a[2] + c}}) == n);
            CHECK(lattice_count(p, WeightCP2{{-w.a[0], -w.a[1], -w.a[2]}}) == n);

            // Scaling by an odd unit keeps the total even.
            std::int64_t u = 1 + 2 * static_cast<std::int64_t>(rng() % 20);
            if (u % pv == 0) u += 2;
            CHECK(lattice_count(p, WeightCP2{{u * w.a[0], u * w.a[1], u * w.a[2]}}) == n);
        }
    }
}

TEST_CASE("every weight counts 1 at p = 5") {
    const OddPrime five(5);
    for (std::int64_t a = 0; a < 10; ++a) {
        for (std::int64_t b = 0; b < 10; ++b) {
            for (std::int64_t c = 0; c < 10; ++c) {
                const WeightCP2 w{{a, b, c}};
                if (is_valid_cp2(five, w)) CHECK(lattice_count(five, w) == 1);
            }
        }
    }
}

TEST_CASE("count cache") {
    CountCache cache;
    const OddPrime p(13);
    CHECK(cache.count(p, WeightCP2{{-1, 0, 1}}) == 3);
    CHECK(cache.count(p, WeightCP2{{25, 26, 27}}) == 3);  // same residues and half-residue
    CHECK(cache.size() == 1);
    CHECK(cache.count(p, WeightCP2{{-1, 1, 2}}) == 1);
    CHECK(cache.size() == 2);
}

}
