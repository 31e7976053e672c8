#include <benchmark/benchmark.h>

#include <lindyn/dyadic.hpp>
#include <lindyn/freqdyn.hpp>
#include <lindyn/sampled.hpp>
#include <lindyn/shifts.hpp>
#include <lindyn/sparse_seq.hpp>
#include <lindyn/weight.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace {

using namespace lindyn;

void BM_SchauderRoundTrip(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    SampledFunction f = SampledFunction::zero(-8, 8, level);
    for (double& v : f.values) v = dist(rng);
    for (auto _ : state) {
        const SparseSeq a = schauder_coefficients(f);
        const SampledFunction g = schauder_reconstruct(a, -8, 8, level);
        benchmark::DoNotOptimize(g.values.data());
    }
    state.SetComplexityN(f.node_count());
}
BENCHMARK(BM_SchauderRoundTrip)->Arg(6)->Arg(8)->Arg(10)->Complexity();

void BM_OrbitScan(benchmark::State& state) {
    const std::int64_t horizon = state.range(0);
    const Weight rho = Weight::exp_abs(1.0, Domain::FullLine, 2.0).step_normalized();
    const PseudoShift T = backward_shift_family(rho, Universe::ZDyadic, -64, 64);
    const FrequencySets fs =
        generate_frequency_sets(2, horizon, 30, {16.0, 256.0});
    const std::vector<SparseSeq> targets = default_dense_targets(T, 2);
    const FhVector built = construct_fh_vector(T, fs, targets, horizon);
    for (auto _ : state) {
        double worst = 0.0;
        for (std::int64_t n : built.trace.G[0])
            worst = std::max(worst, orbit_distance(T, built.x, n, targets[0]));
        benchmark::DoNotOptimize(worst);
    }
}
BENCHMARK(BM_OrbitScan)->Arg(2000)->Arg(20000);

void BM_LowerDensity(benchmark::State& state) {
    const std::int64_t horizon = state.range(0);
    std::vector<std::int64_t> a;
    for (std::int64_t n = 7; n <= horizon; n += 13) a.push_back(n);
    for (auto _ : state) {
        const DensityEstimate d = lower_density(a, horizon);
        benchmark::DoNotOptimize(d.value);
    }
    state.SetComplexityN(horizon);
}
BENCHMARK(BM_LowerDensity)->Arg(10000)->Arg(100000)->Arg(1000000)->Complexity();

} // namespace

BENCHMARK_MAIN();
