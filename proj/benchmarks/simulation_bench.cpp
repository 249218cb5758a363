#include <swarmsim/runner.hpp>
#include <swarmsim/simulation.hpp>

#include <benchmark/benchmark.h>

using namespace swarmsim;

namespace {

void BM_SimulateScenario(benchmark::State& state) {
    const auto scenario = generate_random_scenario(static_cast<std::uint64_t>(state.range(0)));
    SimulationOptions opt;
    opt.seed = static_cast<std::uint64_t>(state.range(0));
    opt.strategy = make_strategy("equal", RankingMethod::borda, ReliabilityMode::none);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(scenario.infrastructure.capacities, scenario.applications, opt));
    }
}
BENCHMARK(BM_SimulateScenario)->Arg(1)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_StrategyMatrix(benchmark::State& state) {
    ScenarioConfig c;
    c.methods = {RankingMethod::cost};
    for (std::uint64_t s = 1; s <= 20; ++s) c.seeds.push_back(s);
    c.jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_matrix(c));
    }
}
BENCHMARK(BM_StrategyMatrix)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
