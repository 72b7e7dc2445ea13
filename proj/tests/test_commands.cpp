#include <doctest.h>

#include <set>

#include "support/models.hpp"

using namespace fortress;
using namespace fortress::testing;

TEST_CASE("commands are exactly the supersets of the uncontrollable events") {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const Alphabet al = random_alphabet(rng, {5, 3, false});
    const auto commands = enumerate_commands(al);
    std::set<EventMask> expected;
    for (EventMask m = 0; m < (EventMask{1} << al.size()); ++m) {
      if (subset_of(al.uncontrollable(), m)) expected.insert(m);
    }
    std::set<EventMask> got;
    for (Symbol c : commands) {
      CHECK(c.is_command());
      got.insert(c.members());
    }
    CHECK(got == expected);
    CHECK(commands.size() == expected.size());
    CHECK(std::is_sorted(commands.begin(), commands.end()));
  }
}

TEST_CASE("command enumeration refuses too many controllable events") {
  const Alphabet al({{"a", true}, {"b", true}, {"c", true}});
  CHECK(enumerate_commands(al, 3).size() == 8);
  CHECK_THROWS_AS(enumerate_commands(al, 2), SizeLimitError);
}

TEST_CASE("command execution automaton") {
  const auto inst = running_example();
  const Alphabet& al = inst.alphabet;
  const Automaton ce = build_ce(al);
  CHECK(ce.state_count() == 1 + 8);
  const StateId init = *ce.initial();
  CHECK(ce.label(init) == "init");
  CHECK(ce.enabled_events(init) == 0);

  const Symbol gamma = cmd(al, {"b", "c", "d"});
  const auto q = ce.successor(init, gamma);
  REQUIRE(q.has_value());
  CHECK(ce.label(*q) == "q{b,c,d}");
  // Observable members return, unobservable ones loop, non-members are off.
  CHECK(ce.successor(*q, ev(al, "c")) == init);
  CHECK(ce.successor(*q, ev(al, "d")) == init);
  CHECK(ce.successor(*q, ev(al, "b")) == *q);
  CHECK_FALSE(ce.defined(*q, ev(al, "a")));
  CHECK_FALSE(ce.defined(*q, ev(al, "e")));
  CHECK_FALSE(ce.defined(*q, gamma));

  const Automaton ce_a = build_ce_attacked(al);
  const auto qa = ce_a.successor(*ce_a.initial(), gamma);
  REQUIRE(qa.has_value());
  // e is attacker-controllable and unobservable to the supervisor.
  CHECK(ce_a.successor(*qa, ev(al, "e")) == *qa);
  CHECK_FALSE(ce_a.defined(*qa, ev(al, "a")));
  CHECK(ce_a.transition_count() > ce.transition_count());
}
