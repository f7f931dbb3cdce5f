#include <benchmark/benchmark.h>

#include <random>

#include "incl/incl.hpp"

namespace {

using namespace incl;

// Path 0 -> 1 -> ... -> n-1 plus a few random forward chords.
Digraph chain(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Value> vs;
  std::vector<std::pair<Value, Value>> es;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(Value::of(std::to_string(i)));
  for (std::size_t i = 0; i + 1 < n; ++i) es.emplace_back(vs[i], vs[i + 1]);
  for (std::size_t k = 0; k < n / 2; ++k) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i < j) es.emplace_back(vs[i], vs[j]);
  }
  return Digraph(vs, es);
}

ReductionOutput reach_instance(std::size_t n) {
  Digraph g = chain(n, n);
  return reduce_reach(g, Value::of("0"), Value::of(std::to_string(n - 1)), false);
}

void BM_Removal(benchmark::State& state) {
  auto out = reach_instance(static_cast<std::size_t>(state.range(0)));
  auto atoms = flatten_conjunction(out.formula);
  for (auto _ : state) benchmark::DoNotOptimize(msm_removal(out.team, atoms));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Removal)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Graph(benchmark::State& state) {
  auto out = reach_instance(static_cast<std::size_t>(state.range(0)));
  Model m = model_of(out);
  for (auto _ : state) benchmark::DoNotOptimize(msm_graph(m, out.team, {"x"}, {"y"}, std::nullopt, false));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Graph)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Game(benchmark::State& state) {
  auto out = reach_instance(static_cast<std::size_t>(state.range(0)));
  Model m = model_of(out);
  for (auto _ : state) benchmark::DoNotOptimize(msm_game(m, out.team, out.formula));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Game)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Brute(benchmark::State& state) {
  auto out = reach_instance(static_cast<std::size_t>(state.range(0)));
  Model m = model_of(out);
  MsmOptions opts;
  opts.brute_max_rows = 20;
  for (auto _ : state) benchmark::DoNotOptimize(msm_brute(m, out.team, out.formula, opts));
}
BENCHMARK(BM_Brute)->DenseRange(4, 12, 4);

// Balanced AND/OR circuit of the given depth over alternating inputs.
Circuit layered_circuit(int depth) {
  Circuit c;
  c.output = "1";
  int gates = (1 << depth) - 1;
  for (int i = 1; i <= gates; ++i) {
    Gate g;
    if (2 * i > gates) {
      g.op = Gate::Op::Input;
      g.value = i % 3 != 0;
    } else {
      g.op = (i % 2) ? Gate::Op::And : Gate::Op::Or;
      g.left = std::to_string(2 * i);
      g.right = std::to_string(2 * i + 1);
    }
    c.gates.emplace(std::to_string(i), g);
  }
  return c;
}

void BM_McvpRemoval(benchmark::State& state) {
  auto out = reduce_mcvp(layered_circuit(static_cast<int>(state.range(0))), McvpVariant::XzYz);
  auto atoms = flatten_conjunction(out.formula);
  for (auto _ : state) benchmark::DoNotOptimize(msm_removal(out.team, atoms));
  state.counters["rows"] = static_cast<double>(out.team.size());
}
BENCHMARK(BM_McvpRemoval)->DenseRange(4, 12, 2);

void BM_SolveBounded(benchmark::State& state) {
  auto out = reach_instance(static_cast<std::size_t>(state.range(0)));
  GameArena arena = GameArena::build(model_of(out), out.team, out.query_row, out.formula);
  std::size_t k = arena.tree().size() * out.team.size();
  for (auto _ : state) benchmark::DoNotOptimize(solve_bounded(arena, k));
}
BENCHMARK(BM_SolveBounded)->RangeMultiplier(2)->Range(8, 128);

void BM_TcSentence(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  Relation e{2, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) e.tuples.insert({Value::of(std::to_string(i)), Value::of(std::to_string(i + 1))});
  Model m = ordered_chain(n, {{"E", e}});
  Formula sentence = translate_tc(parse_tc("TC[x,y]{E(x,y)}(min,max)"));
  for (auto _ : state) benchmark::DoNotOptimize(sentence_holds(m, sentence));
}
BENCHMARK(BM_TcSentence)->DenseRange(2, 5, 1);

}  // namespace

BENCHMARK_MAIN();
