#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "routecog/assignment.hpp"
#include "routecog/choice.hpp"
#include "routecog/routing.hpp"

namespace {

using namespace routecog;

std::vector<double> free_flow_costs() {
  const Network& net = fixture_network();
  const auto config = default_config();
  return edge_general_costs(net, free_flow_state(net).edge_travel_time,
                            config.weights.at("experienced"));
}

void BM_KShortestSinglePair(benchmark::State& state) {
  const Network& net = fixture_network();
  const auto costs = free_flow_costs();
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k_shortest_routes(net, {0, 10, k, costs}));
}
BENCHMARK(BM_KShortestSinglePair)->Arg(1)->Arg(5)->Arg(20);

void BM_KShortestAllPairs(benchmark::State& state) {
  const Network& net = fixture_network();
  const auto costs = free_flow_costs();
  const std::size_t zones = net.zones().size();
  for (auto _ : state) {
    for (ZoneIndex o = 0; o < zones; ++o)
      for (ZoneIndex d = 0; d < zones; ++d)
        if (o != d) benchmark::DoNotOptimize(k_shortest_routes(net, {o, d, 5, costs}));
  }
}
BENCHMARK(BM_KShortestAllPairs)->Unit(benchmark::kMillisecond);

void BM_ChoiceProbabilities(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> cost(1.0, 500.0);
  std::vector<double> costs(static_cast<std::size_t>(state.range(0)));
  for (auto& c : costs) c = cost(rng);
  const ChoiceParams logit{ChoiceModel::logit, 3.0};
  const ChoiceParams kirchhoff{ChoiceModel::kirchhoff, 3.0};
  const bool use_logit = state.range(1) == 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(choice_probabilities(costs, use_logit ? logit : kirchhoff));
}
BENCHMARK(BM_ChoiceProbabilities)->ArgsProduct({{2, 10, 100}, {0, 1}});

void BM_Assignment(benchmark::State& state) {
  const Network& net = fixture_network();
  const ODMatrix od = flat_time_od();
  auto config = default_config();
  config.cognition = state.range(0) != 0;
  config.max_iterations = 10;
  config.stop_at_convergence = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_assignment(net, od, config));
}
BENCHMARK(BM_Assignment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
