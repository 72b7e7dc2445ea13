#include <benchmark/benchmark.h>

#include "fortress/fortress.hpp"

using namespace fortress;

namespace {

struct Example {
  Alphabet alphabet;
  Automaton plant;
  Automaton supervisor;
};

Example running_example() {
  Alphabet al({
      {"a", true, true, false, false},
      {"b", false, false, true, false},
      {"c", false, true, true, false},
      {"d", true, true, true, false},
      {"e", true, false, true, true},
  });
  auto e = [&](const char* n) { return Symbol::event(*al.index_of(n)); };
  Automaton g(al.plant_symbols());
  for (int i = 0; i <= 10; ++i) g.add_state(std::to_string(i), i == 10);
  g.set_initial(0);
  const std::tuple<StateId, const char*, StateId> arcs[] = {
      {0, "a", 1}, {0, "b", 5}, {0, "e", 7}, {1, "c", 2}, {2, "d", 3},  {5, "a", 6},
      {6, "c", 4}, {6, "a", 4}, {7, "a", 8}, {8, "d", 9}, {9, "c", 10},
  };
  for (const auto& [from, name, to] : arcs) g.add_transition(from, e(name), to);
  Automaton s(al.plant_symbols());
  for (int i = 0; i <= 3; ++i) s.add_state(std::to_string(i));
  s.set_initial(0);
  const std::tuple<StateId, const char*, StateId> sup[] = {
      {0, "a", 1}, {0, "b", 0}, {0, "c", 0}, {1, "b", 1}, {1, "c", 2}, {1, "d", 3},
      {2, "b", 2}, {2, "c", 2}, {2, "d", 3}, {3, "b", 3}, {3, "c", 3},
  };
  for (const auto& [from, name, to] : sup) s.add_transition(from, e(name), to);
  return {std::move(al), std::move(g), std::move(s)};
}

// A ring of `n` states over `events` events with a chord per state.
Automaton ring(std::size_t n, std::size_t events) {
  Automaton a(SymbolSet::of_events((EventMask{1} << events) - 1));
  for (std::size_t i = 0; i < n; ++i) a.add_state(std::to_string(i), i == n - 1);
  a.set_initial(0);
  for (StateId q = 0; q < n; ++q) {
    for (std::size_t e = 0; e < events; ++e) {
      a.add_transition(q, Symbol::event(e), static_cast<StateId>((q * (e + 2) + e + 1) % n));
    }
  }
  return a;
}

void BM_FortifyRunningExample(benchmark::State& state) {
  const Example ex = running_example();
  FortifyOptions options;
  options.resilience_precheck = false;
  for (auto _ : state) benchmark::DoNotOptimize(fortify(ex.plant, ex.supervisor, ex.alphabet, options));
}
BENCHMARK(BM_FortifyRunningExample)->Unit(benchmark::kMillisecond);

void BM_CheckResilient(benchmark::State& state) {
  const Example ex = running_example();
  for (auto _ : state) benchmark::DoNotOptimize(check_resilient(ex.plant, ex.supervisor, ex.alphabet));
}
BENCHMARK(BM_CheckResilient)->Unit(benchmark::kMicrosecond);

void BM_SubsetConstruct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Automaton a = ring(n, 4);
  const SymbolSet observed = SymbolSet::of_events(0b0011);
  for (auto _ : state) benchmark::DoNotOptimize(subset_construct(a, observed));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SubsetConstruct)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_SupcnRing(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Automaton plant = ring(n, 4);
  Automaton legal = ring(n, 4);
  legal.set_marked(static_cast<StateId>(n - 1), false);
  const StateId bad[] = {static_cast<StateId>(n - 1)};
  legal = remove_states(legal, bad);
  const ControlConstraint cc{SymbolSet::of_events(0b0001), SymbolSet::of_events(0b0111)};
  for (auto _ : state) benchmark::DoNotOptimize(supcn_synthesize(plant, legal, cc));
}
BENCHMARK(BM_SupcnRing)->RangeMultiplier(2)->Range(8, 256);

void BM_Compose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Automaton a = ring(n, 4);
  const Automaton b = ring(n / 2 + 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(parallel_compose(a, b));
}
BENCHMARK(BM_Compose)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
BENCHMARK_MAIN();
