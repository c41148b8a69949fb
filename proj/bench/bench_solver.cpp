#include <benchmark/benchmark.h>

#include <random>

#include "sdp/examples/cylinder.hpp"
#include "sdp/examples/knapsack.hpp"
#include "sdp/oracle.hpp"

namespace {

using namespace sdp;

const examples::Knapsack& big_knapsack() {
  static const examples::Knapsack k = [] {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> weight(1, 40);
    std::uniform_real_distribution<double> value(0.5, 25.0);
    std::vector<examples::Item> items;
    for (int i = 0; i < 60; ++i) items.push_back({weight(rng), value(rng)});
    return examples::knapsack(400, std::move(items));
  }();
  return k;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_KnapsackModel(benchmark::State& state) {
  const auto& k = big_knapsack();
  for (auto _ : state) {
    auto model = Model<int, examples::Pick>::for_horizon(k, 0, 60, exec_of(state));
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_KnapsackModel)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_KnapsackSolve(benchmark::State& state) {
  const auto& k = big_knapsack();
  const auto model = Model<int, examples::Pick>::for_horizon(k, 0, 60, exec_of(state));
  for (auto _ : state) {
    auto sol = backwards_induction(model, 0, 60, {exec_of(state), Memory::Full, false});
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_KnapsackSolve)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_KnapsackSolveStreaming(benchmark::State& state) {
  const auto& k = big_knapsack();
  const auto model = Model<int, examples::Pick>::for_horizon(k, 0, 60, exec_of(state));
  for (auto _ : state) {
    auto sol = backwards_induction(model, 0, 60, {exec_of(state), Memory::Streaming, false});
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_KnapsackSolveStreaming)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_CylinderStochSolve(benchmark::State& state) {
  const auto cyl = examples::cylinder_stoch(0.2);
  const Steps n = static_cast<Steps>(state.range(1));
  const auto model = Model<char, examples::Move>::for_horizon(cyl, 0, n, exec_of(state));
  for (auto _ : state) {
    auto sol = backwards_induction(model, 0, n, {exec_of(state), Memory::Full, false});
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_CylinderStochSolve)
    ->ArgsProduct({{0, 1}, {10, 100, 1000}})
    ->ArgNames({"parallel", "steps"})
    ->Unit(benchmark::kMicrosecond);

void BM_OracleExhaustive(benchmark::State& state) {
  const auto cyl = examples::cylinder_stoch(0.2);
  const auto model = Model<char, examples::Move>::for_horizon(cyl, 0, 2, exec_of(state));
  const auto ps = backwards_induction(model, 0, 2).policies;
  for (auto _ : state) {
    auto report = check_opt_policy_seq(model, ps, kDefaultCap, CheckMode::Exhaustive);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_OracleExhaustive)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_OracleRestricted(benchmark::State& state) {
  const auto cyl = examples::cylinder_det();
  const auto model = Model<char, examples::Move>::for_horizon(cyl, 0, 6, exec_of(state));
  const auto ps = backwards_induction(model, 0, 6).policies;
  for (auto _ : state) {
    auto report = check_opt_policy_seq(model, ps, kDefaultCap, CheckMode::Restricted);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_OracleRestricted)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
