#include "ppnear/mealy.hpp"
#include "ppnear/radical.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace ppnear;

namespace {

MealyMachine random_machine(const FiniteGroup& g, std::size_t states, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> pick_state(0, states - 1);
    std::uniform_int_distribution<Element> pick_elem(0, static_cast<Element>(g.order() - 1));
    std::vector<State> trans(states * g.order());
    std::vector<Element> out(states * g.order());
    for (auto& t : trans)
        t = static_cast<State>(pick_state(rng));
    for (auto& y : out)
        y = pick_elem(rng);
    return MealyMachine(g, states, 0, std::move(trans), std::move(out));
}

void BM_Compose(benchmark::State& state)
{
    const auto g = FiniteGroup::cyclic(3);
    std::mt19937_64 rng(1);
    const auto states = static_cast<std::size_t>(state.range(0));
    const auto a = random_machine(g, states, rng);
    const auto b = random_machine(g, states, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_Compose)->RangeMultiplier(2)->Range(4, 64);

void BM_EquivalentSelf(benchmark::State& state)
{
    const auto g = FiniteGroup::cyclic(3);
    std::mt19937_64 rng(2);
    const auto a = random_machine(g, static_cast<std::size_t>(state.range(0)), rng);
    const auto b = add(a, zero_machine(g));
    for (auto _ : state)
        benchmark::DoNotOptimize(equivalent(a, b));
}
BENCHMARK(BM_EquivalentSelf)->RangeMultiplier(2)->Range(4, 256);

void BM_RadicalIdentity(benchmark::State& state)
{
    const auto g = FiniteGroup::cyclic(static_cast<std::uint32_t>(state.range(0)));
    const auto d = kernel_generator_c(g, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(radical_identity_check(g, d));
}
BENCHMARK(BM_RadicalIdentity)->DenseRange(3, 9, 2);

} // namespace
