#include <doctest.h>

#include "support/models.hpp"
#include "support/oracles.hpp"

using namespace fortress;
using namespace fortress::testing;

namespace {

// Membership in L(a || b) by projection onto each operand.
bool in_product(const Automaton& a, const Automaton& b, const Word& w) {
  Word wa, wb;
  for (Symbol s : w) {
    if (a.alphabet().contains(s)) wa.push_back(s);
    if (b.alphabet().contains(s)) wb.push_back(s);
  }
  return a.accepts(wa) && b.accepts(wb);
}

Language product_oracle(const Automaton& a, const Automaton& b, const std::vector<Symbol>& symbols, std::size_t len) {
  Language out;
  std::vector<Word> frontier{{}};
  if (!a.initial() || !b.initial()) return out;
  out.insert(Word{});
  for (std::size_t n = 0; n < len; ++n) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (Symbol s : symbols) {
        Word ext = w;
        ext.push_back(s);
        if (in_product(a, b, ext)) {
          out.insert(ext);
          next.push_back(ext);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Automaton over_events(EventMask mask, std::size_t states, Rng& rng) {
  Automaton a(SymbolSet::of_events(mask));
  for (std::size_t i = 0; i < states; ++i) a.add_state("x" + std::to_string(i), rng() % 3 == 0);
  a.set_initial(0);
  for (StateId q = 0; q < states; ++q) {
    for (std::size_t e = 0; e < 4; ++e) {
      if ((mask & bit(e)) && rng() % 2) a.add_transition(q, Symbol::event(e), static_cast<StateId>(rng() % states));
    }
  }
  return a;
}

}  // namespace

TEST_CASE("alphabet validates its partitions") {
  CHECK_THROWS_AS(Alphabet({{"a", false, true, true, true}}), InputError);
  CHECK_THROWS_AS(Alphabet({{"a", true, true, false, true}}), InputError);
  CHECK_THROWS_AS(Alphabet({{"a"}, {"a"}}), InputError);
  CHECK_THROWS_AS(Alphabet({{""}}), InputError);
  const Alphabet ok({{"a", true, true, true, true}, {"b", false, false, false, false}});
  CHECK(ok.controllable() == 1);
  CHECK(ok.uncontrollable() == 2);
  CHECK(ok.unobservable() == 2);
  CHECK(ok.attacker_controllable() == 1);
}

TEST_CASE("symbol names round trip") {
  const auto inst = running_example();
  const Alphabet& al = inst.alphabet;
  const Symbol c = cmd(al, {"b", "c", "d"});
  CHECK(al.symbol_name(c) == "{b,c,d}");
  CHECK(al.parse_symbol("{b,c,d}") == c);
  CHECK(al.parse_symbol("cmd:d,b,c") == c);
  CHECK(al.parse_symbol("e") == ev(al, "e"));
  CHECK_FALSE(al.parse_symbol("z").has_value());
  CHECK(Symbol::event(3) < c);
}

TEST_CASE("automaton stays deterministic and respects its alphabet") {
  Automaton a(SymbolSet::of_events(0b11));
  a.add_state("p");
  a.add_state("q");
  a.set_initial(0);
  a.add_transition(0, Symbol::event(0), 1);
  a.add_transition(0, Symbol::event(0), 1);
  CHECK(a.transition_count() == 1);
  CHECK_THROWS_AS(a.add_transition(0, Symbol::event(0), 0), InputError);
  CHECK_THROWS_AS(a.add_transition(0, Symbol::event(2), 0), InputError);
  CHECK_THROWS_AS(a.add_transition(0, Symbol::command(1), 0), InputError);
  CHECK_THROWS(a.add_transition(0, Symbol::event(1), 7));
  const Word w{Symbol::event(0)};
  CHECK(a.run(w) == StateId{1});
  CHECK_FALSE(a.accepts(Word{Symbol::event(1)}));
}

TEST_CASE("empty automaton has empty languages") {
  const Automaton empty(SymbolSet::of_events(1));
  CHECK(enumerate_language(empty, 3).empty());
  CHECK_FALSE(empty.accepts(Word{}));
  CHECK_FALSE(marker_reachable(empty).holds);
  CHECK(accessible(empty).empty());
}

TEST_CASE("accessible part matches a plain breadth-first count") {
  Rng rng(11);
  const Alphabet al = random_alphabet(rng, {});
  for (int i = 0; i < 50; ++i) {
    const Automaton g = random_plant(rng, al, 8, 0.25, false);
    const Automaton acc = accessible(g);
    CHECK(acc.state_count() == bfs_reachable_count(g));
    CHECK(language_equal(acc, g).holds);
  }
}

TEST_CASE("composition language matches projection membership") {
  Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    const EventMask ma = 0b0111, mb = (rng() % 2) ? 0b1110 : 0b1011;
    const Automaton a = over_events(ma, 3, rng);
    const Automaton b = over_events(mb, 3, rng);
    const Automaton p = parallel_compose(a, b);
    std::vector<Symbol> symbols;
    for (std::size_t e = 0; e < 4; ++e) symbols.push_back(Symbol::event(e));
    CHECK(enumerate_language(p, 5) == product_oracle(a, b, symbols, 5));
    CHECK(p.state_count() == bfs_reachable_count(p));
  }
}

TEST_CASE("composition marking rule") {
  Automaton a(SymbolSet::of_events(1));
  a.add_state("a0", true);
  a.set_initial(0);
  Automaton b(SymbolSet::of_events(1));
  b.add_state("b0", false);
  b.set_initial(0);
  // Only a is marked anywhere: marking lifts from a.
  CHECK(parallel_compose(a, b).is_marked(0));
  b.add_state("b1", true);
  // Both have marks: the pair needs both.
  CHECK_FALSE(parallel_compose(a, b).is_marked(0));
}

TEST_CASE("composition honours the state cap") {
  Automaton a(SymbolSet::of_events(1)), b(SymbolSet::of_events(2));
  for (int i = 0; i < 10; ++i) {
    a.add_state("a" + std::to_string(i));
    b.add_state("b" + std::to_string(i));
  }
  a.set_initial(0);
  b.set_initial(0);
  for (StateId i = 0; i < 10; ++i) {
    a.add_transition(i, Symbol::event(0), (i + 1) % 10);
    b.add_transition(i, Symbol::event(1), (i + 1) % 10);
  }
  CHECK(parallel_compose(a, b).state_count() == 100);
  CHECK_THROWS_AS(parallel_compose(a, b, 50), SizeLimitError);
}

TEST_CASE("projection recognizes exactly the projected language") {
  Rng rng(19);
  for (int i = 0; i < 60; ++i) {
    const Alphabet al = random_alphabet(rng, {});
    const Automaton g = random_plant(rng, al, 6, 0.4, true);
    const SymbolSet obs = SymbolSet::of_events(al.observable());
    const Automaton p = project(g, obs);
    Language expected;
    for (const Word& w : enumerate_language(g, 6)) expected.insert(project_word(w, obs));
    CHECK(enumerate_language(p, 6) == expected);
    CHECK(p.state_count() == bfs_reachable_count(p));
  }
}

TEST_CASE("subset construction keeps unobserved symbols as self-loops") {
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    const Alphabet al = random_alphabet(rng, {});
    const Automaton g = random_plant(rng, al, 6, 0.4, false);
    const SymbolSet obs = SymbolSet::of_events(al.observable());
    const auto sc = subset_construct_detailed(g, obs);
    const Automaton& d = sc.automaton;
    REQUIRE(d.initial().has_value());
    CHECK(sc.members[*d.initial()] == unobservable_reach(g, *g.initial(), obs));
    for (StateId q = 0; q < d.state_count(); ++q) {
      for (const auto& t : d.transitions(q)) {
        if (!obs.contains(t.symbol)) CHECK(t.target == q);
        // Some member must execute the symbol.
        bool some = false;
        for (StateId m : sc.members[q]) some = some || g.defined(m, t.symbol);
        CHECK(some);
      }
    }
    // Every plant string is accepted by its estimate automaton.
    for (const Word& w : enumerate_language(g, 5)) CHECK(d.accepts(w));
  }
}

TEST_CASE("remove_states and language checks") {
  const auto inst = running_example();
  const Automaton& g = inst.plant;
  const StateId bad[] = {1};
  const Automaton cut = remove_states(g, bad);
  CHECK(cut.state_count() == g.state_count() - 1);
  CHECK(language_included(cut, g).holds);
  const auto missing = language_included(g, cut);
  CHECK_FALSE(missing.holds);
  CHECK(missing.witness == Word{ev(inst.alphabet, "a")});
  const StateId initial[] = {0};
  CHECK(remove_states(g, initial).empty());

  const auto marked = marker_reachable(g);
  CHECK(marked.holds);
  CHECK(marked.witness == Word{ev(inst.alphabet, "e"), ev(inst.alphabet, "a"), ev(inst.alphabet, "d"),
                               ev(inst.alphabet, "c")});
}

TEST_CASE("language_equal agrees with enumeration") {
  Rng rng(31);
  const Alphabet al = random_alphabet(rng, {});
  for (int i = 0; i < 100; ++i) {
    const Automaton a = random_plant(rng, al, 4, 0.5, true);
    const Automaton b = random_plant(rng, al, 4, 0.5, true);
    const bool expected = enumerate_language(a, 4) == enumerate_language(b, 4);
    const auto check = language_equal(a, b);
    CHECK(check.holds == expected);
    if (!check.holds) CHECK(a.accepts(check.witness) != b.accepts(check.witness));
  }
}
