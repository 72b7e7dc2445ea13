#include <doctest.h>

#include "support/models.hpp"
#include "support/oracles.hpp"

using namespace fortress;
using namespace fortress::testing;

namespace {

// One-state attacker with self-loops on every symbol except `blocked`.
Automaton loop_attacker(const Alphabet& al, std::initializer_list<Symbol> blocked) {
  Automaton a(al.all_symbols());
  a.add_state("a0");
  a.set_initial(0);
  for (std::size_t e = 0; e < al.size(); ++e) {
    if (std::find(blocked.begin(), blocked.end(), Symbol::event(e)) == blocked.end()) {
      a.add_transition(0, Symbol::event(e), 0);
    }
  }
  for (Symbol c : enumerate_commands(al)) a.add_transition(0, c, 0);
  return a;
}

struct Setup {
  Instance inst;
  Automaton ce_a;
  BipartiteAutomaton bt_a;
};

Setup setup(Instance inst) {
  Automaton ce_a = build_ce_attacked(inst.alphabet);
  BipartiteAutomaton bt_a = attack_bipartize(bipartize(inst.supervisor, inst.alphabet), inst.alphabet);
  return {std::move(inst), std::move(ce_a), std::move(bt_a)};
}

}  // namespace

TEST_CASE("an attacker that never enables anything is covert and harmless") {
  const auto s = setup(running_example());
  const Alphabet& al = s.inst.alphabet;
  const Automaton idle = loop_attacker(al, {ev(al, "e")});
  CHECK(validate_attacker(s.inst.plant, s.ce_a, s.bt_a, idle, al).verdict);
  const auto covert = check_covert(s.inst.plant, s.ce_a, s.bt_a, idle, al);
  CHECK(covert.verdict);
  CHECK(covert.property == Property::covert);
  CHECK_FALSE(check_damage_reachable(s.inst.plant, s.ce_a, s.bt_a, idle, al).verdict);
}

TEST_CASE("an always-enabling attacker reaches damage covertly") {
  const auto s = setup(running_example());
  const Alphabet& al = s.inst.alphabet;
  const Automaton eager = loop_attacker(al, {});
  CHECK(check_covert(s.inst.plant, s.ce_a, s.bt_a, eager, al).verdict);
  const auto damage = check_damage_reachable(s.inst.plant, s.ce_a, s.bt_a, eager, al);
  CHECK(damage.verdict);
  REQUIRE(damage.witness.has_value());
  // Replays on the plant to the damage state.
  const Word plant_word = project_word(*damage.witness, al.plant_symbols());
  const auto end = s.inst.plant.run(plant_word);
  REQUIRE(end.has_value());
  CHECK(s.inst.plant.label(*end) == "10");
  const ClosedLoop loop = attacked_closed_loop(s.inst.plant, s.ce_a, s.bt_a, eager);
  CHECK(loop.automaton.accepts(*damage.witness));
}

TEST_CASE("an enablement followed by an unexpected observation is detected") {
  auto inst = running_example();
  // Let the attacker also enable d, which the supervisor observes.
  std::vector<Event> events = inst.alphabet.events();
  events[3].attacker_controllable = true;
  inst.alphabet = Alphabet(events);
  const StateId extra = inst.plant.add_state("11");
  inst.plant.add_transition(7, ev(inst.alphabet, "d"), extra);
  const auto s = setup(inst);
  const Alphabet& al = s.inst.alphabet;
  const Automaton eager = loop_attacker(al, {});
  const auto covert = check_covert(s.inst.plant, s.ce_a, s.bt_a, eager, al);
  CHECK_FALSE(covert.verdict);
  REQUIRE(covert.witness.has_value());
  const ClosedLoop loop = attacked_closed_loop(s.inst.plant, s.ce_a, s.bt_a, eager);
  const auto end = loop.automaton.run(*covert.witness);
  REQUIRE(end.has_value());
  CHECK(s.bt_a.kinds[loop.structure_state[*end]] == StateKind::detect);
  CHECK(covert.witness->back() == ev(al, "d"));
  CHECK(std::find(covert.witness->begin(), covert.witness->end(), ev(al, "e")) != covert.witness->end());
}

TEST_CASE("inadmissible attackers are rejected") {
  const auto s = setup(running_example());
  const Alphabet& al = s.inst.alphabet;
  // c is not attacker-controllable, so it may not be disabled.
  const Automaton bad = loop_attacker(al, {ev(al, "c")});
  CHECK_FALSE(validate_attacker(s.inst.plant, s.ce_a, s.bt_a, bad, al).verdict);
  CHECK_THROWS_AS(check_covert(s.inst.plant, s.ce_a, s.bt_a, bad, al), InputError);

  // a is unobservable to the attacker, so it must not change state.
  Automaton peeking = loop_attacker(al, {});
  const StateId other = peeking.add_state("a1");
  for (std::size_t e = 0; e < al.size(); ++e) peeking.add_transition(other, Symbol::event(e), other);
  for (Symbol c : enumerate_commands(al)) peeking.add_transition(other, c, other);
  Automaton rebuilt(al.all_symbols());
  rebuilt.add_state("a0");
  rebuilt.add_state("a1");
  rebuilt.set_initial(0);
  for (StateId q : {0u, 1u}) {
    for (const auto& t : peeking.transitions(q)) {
      const bool move = q == 0 && t.symbol == ev(al, "a");
      rebuilt.add_transition(q, t.symbol, move ? 1 : t.target);
    }
  }
  CHECK_FALSE(validate_attacker(s.inst.plant, s.ce_a, s.bt_a, rebuilt, al).verdict);
}

TEST_CASE("resilience of the running example") {
  const auto inst = running_example();
  const Alphabet& al = inst.alphabet;
  const auto r = check_resilient(inst.plant, inst.supervisor, al);
  CHECK(r.property == Property::resilient);
  CHECK_FALSE(r.verdict);
  REQUIRE(r.witness.has_value());
  REQUIRE(r.witness->size() >= 2);
  CHECK((*r.witness)[0].is_command());
  CHECK((*r.witness)[1] == ev(al, "e"));
  const auto end = inst.plant.run(project_word(*r.witness, al.plant_symbols()));
  REQUIRE(end.has_value());
  CHECK(inst.plant.is_marked(*end));
}

TEST_CASE("no attack capability means resilient") {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    auto shape = InstanceShape{};
    shape.alphabet.attack_surface = false;
    auto inst = random_instance(rng, shape);
    std::vector<Event> events = inst.alphabet.events();
    for (auto& e : events) e.attacker_controllable = false;
    const Alphabet tame(events);
    CHECK(check_resilient(inst.plant, inst.supervisor, tame).verdict);
  }
}

TEST_CASE("resilience check validates the supervisor") {
  const auto inst = running_example();
  Automaton s(inst.alphabet.plant_symbols());
  s.add_state("0");
  s.set_initial(0);
  CHECK_THROWS_AS(check_resilient(inst.plant, s, inst.alphabet), InputError);
}

TEST_CASE("control equivalence") {
  const auto inst = running_example();
  const Alphabet& al = inst.alphabet;
  CHECK(check_control_equivalence(inst.plant, inst.supervisor, inst.supervisor, al).verdict);
  // Enabling everything lets e a d c through, which S never allows.
  Automaton all(al.plant_symbols());
  all.add_state("0");
  all.set_initial(0);
  for (std::size_t e = 0; e < al.size(); ++e) all.add_transition(0, Symbol::event(e), 0);
  const auto r = check_control_equivalence(inst.plant, inst.supervisor, all, al);
  CHECK(r.property == Property::control_equivalent);
  CHECK_FALSE(r.verdict);
  REQUIRE(r.witness.has_value());
  // The witness separates the two observer automata.
  const SymbolSet obs = SymbolSet::of_events(al.observable());
  const Automaton o1 = subset_construct(parallel_compose(inst.plant, inst.supervisor), obs);
  const Automaton o2 = subset_construct(parallel_compose(inst.plant, all), obs);
  CHECK(o1.accepts(*r.witness) != o2.accepts(*r.witness));
}

TEST_CASE("control equivalence agrees with closed-loop language equality") {
  Rng rng(8);
  for (int i = 0; i < 60; ++i) {
    const auto inst = random_instance(rng, {});
    const Automaton other = random_supervisor(rng, inst.alphabet, 2);
    const bool expected =
        language_equal(parallel_compose(inst.plant, inst.supervisor), parallel_compose(inst.plant, other)).holds;
    CHECK(check_control_equivalence(inst.plant, inst.supervisor, other, inst.alphabet).verdict == expected);
  }
}
