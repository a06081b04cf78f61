#include "nonsmooth/certificate_io.hpp"
#include "nonsmooth/search.hpp"

#include <benchmark/benchmark.h>

using namespace nonsmooth;

static void BM_LatticeCount(benchmark::State& state) {
    const OddPrime p(state.range(0));
    const WeightCP2 w{{-1, 3, 6}};
    for (auto _ : state) benchmark::DoNotOptimize(lattice_count(p, w));
}
BENCHMARK(BM_LatticeCount)->Arg(11)->Arg(199)->Arg(1009)->Arg(10007);

static void BM_CertifyGeneral(benchmark::State& state) {
    const ManifoldInvariants x{3, 19, true};
    const OddPrime p(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(certify_general(x, p));
}
BENCHMARK(BM_CertifyGeneral)->Arg(127)->Arg(199);

static void BM_VerifyJson(benchmark::State& state) {
    const auto cert = certify_k3_stabilized(2).certificate;
    const std::string text = certificate_to_json(*cert);
    for (auto _ : state) benchmark::DoNotOptimize(verify_certificate_json(text).accepted);
}
BENCHMARK(BM_VerifyJson);

static void BM_BoundedSearchK3(benchmark::State& state) {
    const ManifoldInvariants k3{3, 19, true};
    for (auto _ : state) benchmark::DoNotOptimize(bounded_search(k3, OddPrime(11)));
}
BENCHMARK(BM_BoundedSearchK3)->Unit(benchmark::kMillisecond);

static void BM_PrimeSweepTwoCopies(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(prime_sweep({2, 2, true}, 5, 199, Strategy::S2xS2Sum));
    }
}
BENCHMARK(BM_PrimeSweepTwoCopies)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
