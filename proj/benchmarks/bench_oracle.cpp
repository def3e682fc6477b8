#include "ppnear/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace ppnear;

namespace {

void BM_EnumeratePP2Z2(benchmark::State& state)
{
    const auto g = FiniteGroup::cyclic(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_pp_n(g, 2));
}
BENCHMARK(BM_EnumeratePP2Z2);

void BM_LeftIdealsPP2Z2(benchmark::State& state)
{
    const auto nr = enumerate_pp_n(FiniteGroup::cyclic(2), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_left_ideals(nr));
}
BENCHMARK(BM_LeftIdealsPP2Z2);

void BM_J2(benchmark::State& state)
{
    const auto nr = state.range(0) == 0 ? enumerate_pp_n(FiniteGroup::cyclic(2), 2)
                                        : enumerate_pp_n(FiniteGroup::cyclic(3), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(j2_bruteforce(nr));
}
BENCHMARK(BM_J2)->Arg(0)->Arg(1);

void BM_EnumerateKerAlpha2Z3(benchmark::State& state)
{
    const auto g = FiniteGroup::cyclic(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_ker_alpha_maps(g, 2));
}
BENCHMARK(BM_EnumerateKerAlpha2Z3);

} // namespace
