// Micro-benchmarks for the expensive pieces: the refinement chain, separator
// construction, closures, the PT check and prefix-height search.

#include <benchmark/benchmark.h>

#include "ptsep/closures.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/operations.hpp"
#include "ptsep/prefix_towers.hpp"
#include "ptsep/pt_check.hpp"
#include "ptsep/separation.hpp"

namespace {

using namespace ptsep;

void BM_QuadraticChain(benchmark::State& state) {
  const FamilyInstance f = gen_quadratic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const RefinementChain chain = refinement_chain(f.left, f.right);
    benchmark::DoNotOptimize(chain.index);
  }
  state.counters["steps"] = static_cast<double>(refinement_chain(f.left, f.right).index);
}
BENCHMARK(BM_QuadraticChain)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond);

void BM_ExpChain(benchmark::State& state) {
  const FamilyInstance f = gen_exp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(refinement_chain(f.left, f.right).index);
  }
}
BENCHMARK(BM_ExpChain)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

void BM_QuadraticSeparator(benchmark::State& state) {
  const FamilyInstance f = gen_quadratic(static_cast<std::size_t>(state.range(0)));
  const RefinementChain chain = refinement_chain(f.left, f.right);
  std::size_t states = 0;
  for (auto _ : state) {
    states = build_separator(chain).state_count();
    benchmark::DoNotOptimize(states);
  }
  state.counters["states"] = static_cast<double>(states);
}
BENCHMARK(BM_QuadraticSeparator)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_TwoExpSeparator(benchmark::State& state) {
  const FamilyInstance f = gen_2exp(static_cast<std::size_t>(state.range(0)));
  const RefinementChain chain = refinement_chain(f.left, f.right);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_separator(chain).state_count());
  }
}
BENCHMARK(BM_TwoExpSeparator)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_DownClosureDfa(benchmark::State& state) {
  const FamilyInstance f = gen_exp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(down_closure_dfa(f.left).state_count());
  }
}
BENCHMARK(BM_DownClosureDfa)->DenseRange(2, 8, 2);

void BM_UpClosureDfa(benchmark::State& state) {
  const FamilyInstance f = gen_exp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(up_closure_dfa(f.left).state_count());
  }
}
BENCHMARK(BM_UpClosureDfa)->DenseRange(2, 8, 2);

void BM_PtCheck(benchmark::State& state) {
  const Automaton dfa = minimal_dfa(gen_exp(static_cast<std::size_t>(state.range(0))).left);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_pt_minimal_dfa(dfa).piecewise_testable);
  }
  state.counters["states"] = static_cast<double>(dfa.state_count());
}
BENCHMARK(BM_PtCheck)->DenseRange(1, 7);

void BM_PrefixHeight(benchmark::State& state) {
  const FamilyInstance f = gen_exp(static_cast<std::size_t>(state.range(0)));
  const Automaton a = minimal_dfa(f.left);
  const Automaton b = minimal_dfa(f.right);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_prefix_tower_height(a, b).height);
  }
}
BENCHMARK(BM_PrefixHeight)->DenseRange(1, 7);

void BM_ExpDfaTowerCheck(benchmark::State& state) {
  const FamilyInstance f = gen_expdfa(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_tower(f.left, f.right, *f.tower));
  }
}
BENCHMARK(BM_ExpDfaTowerCheck)->DenseRange(2, 8, 2);

} // namespace

BENCHMARK_MAIN();
