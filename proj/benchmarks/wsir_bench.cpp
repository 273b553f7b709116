#include <benchmark/benchmark.h>

#include "wsir/graph.hpp"
#include "wsir/limit.hpp"
#include "wsir/rng.hpp"
#include "wsir/sim.hpp"
#include "wsir/weights.hpp"

using namespace wsir;

namespace {

WeightDistribution bench_dist() {
  return WeightDistribution::from_pairs({{1.0, 0.5}, {2.0, 0.5}});
}

void BM_er_pairwise(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(detail::er_edges_pairwise(n, 0.01, seed++));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(n * (n - 1) / 2));
}
BENCHMARK(BM_er_pairwise)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_er_skip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(detail::er_edges_skip(n, 0.01, seed++));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(n * (n - 1) / 2));
}
BENCHMARK(BM_er_skip)->Arg(1000)->Arg(4000)->Arg(16000)->Arg(64000);

void BM_event_loop(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ModelParams mp{n, 0.1, 3.0, 0.2};
  const Graph g = Graph::erdos_renyi(n, mp.p, 7);
  const auto w = sample_assignment(bench_dist(), n, 8);
  const auto init = init_states(n, mp.theta, 9);
  const std::vector<double> obs{1000.0};  // run to extinction
  std::uint64_t seed = 100;
  std::size_t events = 0;
  for (auto _ : state) {
    std::size_t count = 0;
    const auto traj = simulate(g, w, mp, init, obs, seed++,
                               [&](const Event&) { ++count; });
    benchmark::DoNotOptimize(traj);
    events += count;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_event_loop)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_observables(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = Graph::erdos_renyi(n, 0.1, 7);
  const auto w = sample_assignment(bench_dist(), n, 8);
  const auto s = init_states(n, 0.3, 9);
  for (auto _ : state) benchmark::DoNotOptimize(observables(s, w, g));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_observables)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_limit_psi(benchmark::State& state) {
  const LimitParams lp{bench_dist(), 0.2, 0.5, 2.0};
  std::vector<double> t;
  for (int i = 0; i <= 100; ++i) t.push_back(0.1 * i);
  for (auto _ : state) benchmark::DoNotOptimize(solve_psi(lp, t, 1e-9));
}
BENCHMARK(BM_limit_psi);

void BM_limit_component(benchmark::State& state) {
  const LimitParams lp{bench_dist(), 0.2, 0.5, 2.0};
  std::vector<double> t;
  for (int i = 0; i <= 100; ++i) t.push_back(0.1 * i);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_component_ode(lp, t, 1e-9));
}
BENCHMARK(BM_limit_component);

void BM_limit_time_change(benchmark::State& state) {
  const LimitParams lp{bench_dist(), 0.2, 0.5, 2.0};
  std::vector<double> t;
  for (int i = 0; i <= 100; ++i) t.push_back(0.1 * i);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_time_change(lp, t, 1e-9));
}
BENCHMARK(BM_limit_time_change);

}  // namespace

BENCHMARK_MAIN();
