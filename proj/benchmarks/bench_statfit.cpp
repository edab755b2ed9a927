#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "sgraph/statfit.hpp"

using namespace sgraph;

namespace {

// Pareto-ish integer sample via inverse transform; enough tail spread
// to make the fits representative.
std::vector<double> synthetic_tail(std::size_t n, double alpha,
                                   std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> vals;
    vals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u =
            (static_cast<double>(gen() >> 11) + 0.5) * 0x1p-53;
        vals.push_back(std::floor(std::pow(u, -1.0 / (alpha - 1.0))));
    }
    return vals;
}

void BM_HurwitzZeta(benchmark::State& state) {
    double alpha = 1.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hurwitz_zeta(alpha, 6));
        alpha = alpha < 6.0 ? alpha + 0.001 : 1.5;
    }
}
BENCHMARK(BM_HurwitzZeta);

void BM_FitZeta(benchmark::State& state) {
    const auto sample = make_tail_sample(
        synthetic_tail(static_cast<std::size_t>(state.range(0)), 2.3, 5), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_zeta_mle(sample));
    }
}
BENCHMARK(BM_FitZeta)->Arg(10000)->Arg(100000);

void BM_FitLognormal(benchmark::State& state) {
    const auto sample = make_tail_sample(
        synthetic_tail(static_cast<std::size_t>(state.range(0)), 2.3, 5), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_lognormal_mle(sample));
    }
}
BENCHMARK(BM_FitLognormal)->Arg(10000)->Arg(100000);

void BM_DplnSample(benchmark::State& state) {
    const DplnParams p{6.0, 3.0, 0.0, 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dpln_sample(p, static_cast<std::size_t>(state.range(0)), 9));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DplnSample)->Arg(100000);

void BM_EstimateXmin(benchmark::State& state) {
    const auto vals = synthetic_tail(20000, 2.3, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_xmin(vals));
    }
}
BENCHMARK(BM_EstimateXmin);

}  // namespace

BENCHMARK_MAIN();
