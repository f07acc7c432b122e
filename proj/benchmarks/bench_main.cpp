#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cxh/bounds.hpp"
#include "cxh/caratheodory.hpp"
#include "cxh/complex_dist.hpp"
#include "cxh/families.hpp"
#include "cxh/nelder_mead.hpp"
#include "cxh/random_dist.hpp"
#include "cxh/regions.hpp"

namespace {

void BM_GFunction(benchmark::State& state)
{
    double d = 0.0;
    for (auto _ : state) {
        d = d > 20.0 ? 1e-4 : d + 0.37;
        benchmark::DoNotOptimize(cxh::g_function(d));
    }
}
BENCHMARK(BM_GFunction);

void BM_TwoPointObjective(benchmark::State& state)
{
    const cxh::TwoPointParams p{3.12, 0.6365, 1.92};
    for (auto _ : state) benchmark::DoNotOptimize(cxh::two_point_objective(p));
}
BENCHMARK(BM_TwoPointObjective);

void BM_NelderMeadTwoPoint(benchmark::State& state)
{
    const cxh::Objective f = [](std::span<const double> x) {
        return cxh::two_point_objective({3.12, x[0], x[1]});
    };
    const std::vector<double> start{0.5, 1.5};
    for (auto _ : state) benchmark::DoNotOptimize(cxh::nelder_mead(f, start).value);
}
BENCHMARK(BM_NelderMeadTwoPoint);

void BM_EnclosingDisk(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cxh::Complex> pts(static_cast<std::size_t>(state.range(0)));
    for (auto& z : pts) z = {n(rng), n(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(cxh::enclosing_disk(std::span<const cxh::Complex>(pts)).radius);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnclosingDisk)->RangeMultiplier(10)->Range(10, 100000)->Complexity(benchmark::oN);

void BM_Decompose(benchmark::State& state)
{
    std::mt19937_64 rng(2);
    const auto d = cxh::random_zero_mean(rng, static_cast<std::size_t>(state.range(0)), 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(cxh::decompose(d).components.size());
}
BENCHMARK(BM_Decompose)->Arg(4)->Arg(16)->Arg(64);

void BM_SampleRegion(benchmark::State& state)
{
    cxh::SampleOptions o;
    o.keep_params = false;
    const auto cls = state.range(0) == 2 ? cxh::FamilyClass::two_point : cxh::FamilyClass::three_point;
    for (auto _ : state) benchmark::DoNotOptimize(cxh::sample_region(3.0, cls, 100000, o).points.size());
}
BENCHMARK(BM_SampleRegion)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
