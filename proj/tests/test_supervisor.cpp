#include <doctest.h>

#include "support/models.hpp"
#include "support/oracles.hpp"

using namespace fortress;
using namespace fortress::testing;

namespace {

Language closure(std::initializer_list<Word> words) {
  Language out;
  for (const Word& w : words) {
    for (std::size_t n = 0; n <= w.size(); ++n) out.insert(Word(w.begin(), w.begin() + n));
  }
  return out;
}

Word word(const Alphabet& al, std::initializer_list<const char*> names) {
  Word w;
  for (const char* n : names) w.push_back(ev(al, n));
  return w;
}

struct Pipeline {
  Instance inst;
  std::vector<Symbol> commands;
  ClosedLoopObserver b;
  BipartiteAutomaton bps, bpns;
};

Pipeline build(Instance inst) {
  Pipeline p{std::move(inst), {}, {}, {}, {}};
  p.commands = enumerate_commands(p.inst.alphabet);
  p.b = observe_closed_loop(p.inst.plant, p.inst.supervisor, p.inst.alphabet);
  p.bps = build_bps(p.b, p.inst.plant, p.inst.alphabet, p.commands);
  p.bpns = build_bpns(p.bps, build_ce(p.inst.alphabet));
  return p;
}

}  // namespace

TEST_CASE("supervisor validation") {
  auto inst = running_example();
  CHECK(validate_supervisor(inst.supervisor, inst.alphabet).verdict);

  Automaton fresh(inst.alphabet.plant_symbols());
  fresh.add_state("0");
  fresh.set_initial(0);
  fresh.add_transition(0, ev(inst.alphabet, "c"), 0);
  const auto r1 = validate_supervisor(fresh, inst.alphabet);
  CHECK_FALSE(r1.verdict);
  CHECK_FALSE(r1.violations.empty());

  Automaton moving(inst.alphabet.plant_symbols());
  moving.add_state("0");
  moving.add_state("1");
  moving.set_initial(0);
  for (StateId q : {0u, 1u}) moving.add_transition(q, ev(inst.alphabet, "c"), q);
  moving.add_transition(0, ev(inst.alphabet, "b"), 1);  // b is unobservable
  moving.add_transition(1, ev(inst.alphabet, "b"), 1);
  CHECK_FALSE(validate_supervisor(moving, inst.alphabet).verdict);
}

TEST_CASE("running example closed loop") {
  const auto inst = running_example();
  const Alphabet& al = inst.alphabet;
  const Automaton cl = parallel_compose(inst.plant, inst.supervisor);
  CHECK(enumerate_language(cl, 10) == closure({word(al, {"a", "c", "d"}), word(al, {"b", "a", "c"})}));
}

TEST_CASE("bipartite transform") {
  const auto inst = running_example();
  const Alphabet& al = inst.alphabet;
  const BipartiteAutomaton bt = bipartize(inst.supervisor, al);
  CHECK(bt.state_count() == 2 * inst.supervisor.state_count());
  CHECK(validate_bipartite(bt, al).verdict);
  for (StateId q = 0; q < bt.state_count(); ++q) {
    CHECK(bt.kinds[q] == (q % 2 == 0 ? StateKind::control : StateKind::reaction));
    if (q % 2 == 0) CHECK(bt.commands_at(q).size() == 1);
  }
  CHECK(bt.commands_at(0) == std::vector<Symbol>{cmd(al, {"a", "b", "c"})});
  CHECK(bt.automaton.label(0) == "0^com");
  CHECK(check_bipartite_equivalence(inst.plant, inst.supervisor, bt, al).verdict);
  // Folding back recovers the original closed-loop language.
  const Automaton folded = to_supervisor(bt, al);
  CHECK(language_equal(parallel_compose(inst.plant, folded), parallel_compose(inst.plant, inst.supervisor)).holds);
}

TEST_CASE("closed-loop language survives the bipartite detour on fuzzed instances") {
  Rng rng(101);
  for (int i = 0; i < 40; ++i) {
    const auto inst = random_instance(rng, {});
    const BipartiteAutomaton bt = bipartize(inst.supervisor, inst.alphabet);
    CHECK(validate_bipartite(bt, inst.alphabet).verdict);
    // Independent check: project the CE-synchronized language by enumeration.
    const Automaton loop = parallel_compose(parallel_compose(inst.plant, build_ce(inst.alphabet)), bt.automaton);
    Language projected;
    for (const Word& w : enumerate_language(loop, 8)) projected.insert(project_word(w, inst.alphabet.plant_symbols()));
    const Language direct = enumerate_language(parallel_compose(inst.plant, inst.supervisor), 4);
    for (const Word& w : direct) CHECK(projected.count(w) == 1);
    for (const Word& w : projected) {
      if (w.size() <= 4) CHECK(direct.count(w) == 1);
    }
    CHECK(check_bipartite_equivalence(inst.plant, inst.supervisor, bt, inst.alphabet).verdict);
  }
}

TEST_CASE("attacked bipartite transform adds a detect state") {
  const auto inst = running_example();
  const Alphabet& al = inst.alphabet;
  const BipartiteAutomaton bt_a = attack_bipartize(bipartize(inst.supervisor, al), al);
  const auto detect = bt_a.states_of(StateKind::detect);
  REQUIRE(detect.size() == 1);
  CHECK(bt_a.automaton.label(detect.front()) == "detect");
  // Reaction state of supervisor state 0: c, d observable; d is not expected.
  CHECK(bt_a.automaton.successor(1, ev(al, "d")) == detect.front());
  CHECK(bt_a.automaton.successor(1, ev(al, "e")) == StateId{1});
}

TEST_CASE("observer and behavior-preserving structures on the running example") {
  const auto p = build(running_example());
  const Alphabet& al = p.inst.alphabet;
  // P_{a,c,d}(closure{acd, bac}) = closure{acd}.
  Language observed;
  for (const Word& w : enumerate_language(p.b.automaton, 8)) observed.insert(project_word(w, SymbolSet::of_events(al.observable())));
  CHECK(observed == closure({word(al, {"a", "c", "d"})}));
  CHECK(p.b.automaton.state_count() == 4);

  CHECK(p.bps.state_count() == 9);
  CHECK(p.bps.states_of(StateKind::dump).size() == 1);
  CHECK(p.bps.commands_at(0) == std::vector<Symbol>{cmd(al, {"a", "b", "c"}), cmd(al, {"a", "b", "c", "d"})});
  CHECK(validate_bipartite(p.bps, al).verdict);

  const StateId init = *p.bpns.automaton.initial();
  CHECK(p.bpns.kinds[init] == StateKind::control);
  CHECK(p.bpns.commands_at(init) ==
        std::vector<Symbol>{cmd(al, {"a", "b", "c"}), cmd(al, {"a", "b", "c", "d"})});
  CHECK(validate_bipartite(p.bpns, al).verdict);
}

TEST_CASE("BT(S) is contained in BPNS(S) and every resolution is control equivalent") {
  Rng rng(202);
  std::vector<Instance> instances;
  instances.push_back(running_example());
  for (int i = 0; i < 5; ++i) instances.push_back(random_instance(rng, {}));
  for (auto& inst : instances) {
    const auto p = build(inst);
    CHECK(language_included(bipartize(p.inst.supervisor, p.inst.alphabet).automaton, p.bpns.automaton).holds);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto fs = extract_deterministic(p.bpns, PickPolicy::random(seed));
      for (StateId q : fs.states_of(StateKind::control)) CHECK(fs.commands_at(q).size() == 1);
      const Automaton s2 = to_supervisor(fs, p.inst.alphabet);
      CHECK(validate_supervisor(s2, p.inst.alphabet).verdict);
      CHECK(check_control_equivalence(p.inst.plant, p.inst.supervisor, s2, p.inst.alphabet).verdict);
    }
  }
}

TEST_CASE("extraction is deterministic per policy") {
  const auto p = build(running_example());
  CHECK(extract_deterministic(p.bpns) == extract_deterministic(p.bpns, PickPolicy::lex_min()));
  CHECK(extract_deterministic(p.bpns, PickPolicy::random(7)) == extract_deterministic(p.bpns, PickPolicy::random(7)));
  const auto lex = extract_deterministic(p.bpns);
  CHECK(lex.commands_at(*lex.automaton.initial()) == std::vector<Symbol>{cmd(p.inst.alphabet, {"a", "b", "c"})});
}

TEST_CASE("extraction fails on a reachable command-less control state") {
  const auto inst = running_example();
  BipartiteAutomaton b;
  b.automaton = Automaton(inst.alphabet.all_symbols());
  b.automaton.add_state("c0");
  b.automaton.set_initial(0);
  b.kinds = {StateKind::control};
  CHECK_THROWS_AS(extract_deterministic(b), ExtractionError);
}

TEST_CASE("pick policy spelling") {
  CHECK(PickPolicy::lex_min().to_string() == "lex-min");
  CHECK(PickPolicy::random(42).to_string() == "random:42");
  CHECK(PickPolicy::parse("random:42")->seed == 42);
  CHECK(PickPolicy::parse("lex-min")->kind == PickPolicy::Kind::lex_min);
  CHECK_FALSE(PickPolicy::parse("random:").has_value());
  CHECK_FALSE(PickPolicy::parse("random:x1").has_value());
  CHECK_FALSE(PickPolicy::parse("greedy").has_value());
}

TEST_CASE("to_supervisor rejects command choices") {
  const auto p = build(running_example());
  CHECK_THROWS_AS(to_supervisor(p.bpns, p.inst.alphabet), InputError);
}

TEST_CASE("witness supervisor contains the requested string") {
  const auto p = build(running_example());
  const Alphabet& al = p.inst.alphabet;
  const Word t{cmd(al, {"a", "b", "c", "d"}), ev(al, "a"), cmd(al, {"b", "c"})};
  const auto w = witness_supervisor(p.bpns, t, al, p.commands);
  CHECK(w.automaton.accepts(t));
  CHECK(language_included(w.automaton, p.bpns.automaton).holds);
  for (StateId q : w.states_of(StateKind::control)) CHECK(w.commands_at(q).size() == 1);
  const Automaton s2 = to_supervisor(w, al);
  CHECK(check_control_equivalence(p.inst.plant, p.inst.supervisor, s2, al).verdict);

  const Word outside{cmd(al, {"b", "c"})};
  CHECK_THROWS_AS(witness_supervisor(p.bpns, outside, al, p.commands), InputError);
}
