#include "twostep/sweeps.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace twostep;

namespace
{

std::vector<double> linspace(double from, double to, int count)
{
	std::vector<double> v;
	for(int k = 0; k < count; ++k)
		v.push_back(from + (to - from) * k / (count - 1));
	return v;
}

Exec mode(const benchmark::State& state)
{
	return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void robustness_grid(benchmark::State& state)
{
	const Scenario s = build_scenario(ScenarioKind::rydberg_ladder);
	const std::vector<double> axis = linspace(-0.05, 0.05, 11);
	for(auto _ : state)
		benchmark::DoNotOptimize(perturbation_sweep(s, axis, axis, 37.2, mode(state)));
	state.SetItemsProcessed(state.iterations() * 121);
}

void spike(benchmark::State& state)
{
	const std::vector<double> ratios = linspace(1.2, 8.9, 78);
	for(auto _ : state)
		benchmark::DoNotOptimize(spike_scan(ratios, nlohmann::json::object(), mode(state)));
	state.SetItemsProcessed(state.iterations() * 78);
}

void stirap(benchmark::State& state)
{
	const std::vector<double> d2 = linspace(0.0, 5.0, 8);
	for(auto _ : state)
		benchmark::DoNotOptimize(stirap_sweep(d2, nlohmann::json::object(), mode(state)));
	state.SetItemsProcessed(state.iterations() * 8);
}

void deformation(benchmark::State& state)
{
	const Scenario s = build_scenario(ScenarioKind::rydberg_ladder);
	const std::vector<double> gammas{50.0, 100.0, 300.0, 1000.0};
	for(auto _ : state)
		benchmark::DoNotOptimize(deformation_sweep(s, gammas, 37.2, mode(state)));
	state.SetItemsProcessed(state.iterations() * 4);
}

} // namespace

// Arg 0 is serial, 1 is the OpenMP path.
BENCHMARK(robustness_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(spike)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(stirap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(deformation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
