#include "fortress/verification.hpp"

#include "fortress/commands.hpp"
#include "fortress/errors.hpp"
#include "fortress/synthesis.hpp"

namespace fortress {

std::string_view to_string(Property p) {
  switch (p) {
    case Property::covert: return "covert";
    case Property::damage_reachable: return "damage-reachable";
    case Property::resilient: return "resilient";
    case Property::control_equivalent: return "control-equivalent";
    case Property::well_formed: return "well-formed";
  }
  return "?";
}

ClosedLoop attacked_closed_loop(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                                const Automaton& attacker, std::size_t max_states) {
  const AttackArena arena = build_attack_arena(g, ce_a, bt_a, max_states);
  auto product = compose_tracked(arena.automaton, attacker, max_states);
  ClosedLoop out{std::move(product.automaton), {}};
  out.structure_state.reserve(product.origin.size());
  for (const auto& o : product.origin) out.structure_state.push_back(arena.structure_state[o[0]]);
  return out;
}

VerificationReport validate_attacker(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                                     const Automaton& attacker, const Alphabet& alphabet, std::size_t max_states) {
  VerificationReport report;
  report.property = Property::well_formed;
  report.artifacts = {"attacker"};
  const EventMask hidden = alphabet.all() & ~alphabet.attacker_observable();
  for (StateId q = 0; q < attacker.state_count(); ++q) {
    for (const auto& t : attacker.transitions(q)) {
      if (t.symbol.is_event() && (hidden & bit(t.symbol.event_index())) && t.target != q) {
        report.violations.push_back("attacker state " + attacker.label(q) + ": unobserved " +
                                    alphabet.symbol_name(t.symbol) + " is not a self-loop");
      }
    }
  }
  const AttackArena arena = build_attack_arena(g, ce_a, bt_a, max_states);
  const auto product = compose_tracked(arena.automaton, attacker, max_states);
  const SymbolSet disableable = SymbolSet::of_events(alphabet.attacker_controllable());
  for (StateId x = 0; x < product.automaton.state_count(); ++x) {
    const auto [qp, qa] = product.origin[x];
    for (const auto& t : arena.automaton.transitions(qp)) {
      if (disableable.contains(t.symbol) || !attacker.alphabet().contains(t.symbol)) continue;
      if (!attacker.defined(qa, t.symbol)) {
        report.violations.push_back("attacker state " + attacker.label(qa) + " disables " +
                                    alphabet.symbol_name(t.symbol) + ", which it cannot control");
      }
    }
  }
  report.verdict = report.violations.empty();
  return report;
}

namespace {

void require_admissible(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                        const Automaton& attacker, const Alphabet& alphabet, std::size_t max_states) {
  const auto check = validate_attacker(g, ce_a, bt_a, attacker, alphabet, max_states);
  if (!check.verdict) throw InputError("inadmissible attacker: " + check.violations.front());
}

}  // namespace

VerificationReport check_covert(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                                const Automaton& attacker, const Alphabet& alphabet, std::size_t max_states) {
  require_admissible(g, ce_a, bt_a, attacker, alphabet, max_states);
  const ClosedLoop cls = attacked_closed_loop(g, ce_a, bt_a, attacker, max_states);
  std::vector<std::uint8_t> detected(cls.automaton.state_count(), 0);
  for (StateId q = 0; q < detected.size(); ++q) {
    detected[q] = bt_a.kinds[cls.structure_state[q]] == StateKind::detect;
  }
  VerificationReport report;
  report.property = Property::covert;
  report.artifacts = {"plant", "ce_attacked", "supervisor_attacked", "attacker"};
  report.witness = shortest_word_to(cls.automaton, detected);
  report.verdict = !report.witness.has_value();
  return report;
}

VerificationReport check_damage_reachable(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                                          const Automaton& attacker, const Alphabet& alphabet,
                                          std::size_t max_states) {
  require_admissible(g, ce_a, bt_a, attacker, alphabet, max_states);
  const ClosedLoop cls = attacked_closed_loop(g, ce_a, bt_a, attacker, max_states);
  VerificationReport report;
  report.property = Property::damage_reachable;
  report.artifacts = {"plant", "ce_attacked", "supervisor_attacked", "attacker"};
  const auto hit = marker_reachable(cls.automaton);
  report.verdict = hit.holds;
  if (hit.holds) report.witness = hit.witness;
  return report;
}

VerificationReport check_resilient(const Automaton& g, const BipartiteAutomaton& bt, const Alphabet& alphabet,
                                   std::size_t max_states) {
  const BipartiteAutomaton bt_a = attack_bipartize(bt, alphabet);
  const Automaton ce_a = build_ce_attacked(alphabet);
  const auto synthesis = synthesize_attacker(g, ce_a, bt_a, alphabet, max_states);
  const Automaton closed = parallel_compose(synthesis.arena.automaton, synthesis.attacker, max_states);
  VerificationReport report;
  report.property = Property::resilient;
  report.artifacts = {"plant", "supervisor"};
  const auto hit = marker_reachable(closed);
  report.verdict = !hit.holds;
  if (hit.holds) report.witness = hit.witness;
  return report;
}

VerificationReport check_resilient(const Automaton& g, const Automaton& s, const Alphabet& alphabet,
                                   std::size_t max_states) {
  const auto valid = validate_supervisor(s, alphabet);
  if (!valid.verdict) throw InputError("invalid supervisor: " + valid.violations.front());
  return check_resilient(g, bipartize(s, alphabet), alphabet, max_states);
}

VerificationReport check_control_equivalence(const Automaton& g, const Automaton& s, const Automaton& s2,
                                             const Alphabet& alphabet, std::size_t max_states) {
  const SymbolSet observed = SymbolSet::of_events(alphabet.observable());
  const Automaton b1 = subset_construct(parallel_compose(g, s, max_states), observed, max_states);
  const Automaton b2 = subset_construct(parallel_compose(g, s2, max_states), observed, max_states);
  const auto eq = language_equal(b1, b2);
  VerificationReport report;
  report.property = Property::control_equivalent;
  report.artifacts = {"plant", "supervisor", "candidate"};
  report.verdict = eq.holds;
  if (!eq.holds) report.witness = eq.witness;
  return report;
}

VerificationReport check_bipartite_equivalence(const Automaton& g, const Automaton& s, const BipartiteAutomaton& bt,
                                               const Alphabet& alphabet, std::size_t max_states) {
  const Automaton closed = parallel_compose(g, s, max_states);
  const Automaton with_commands =
      parallel_compose(parallel_compose(g, build_ce(alphabet), max_states), bt.automaton, max_states);
  const Automaton projected = project(with_commands, alphabet.plant_symbols(), max_states);
  const auto eq = language_equal(closed, projected);
  VerificationReport report;
  report.property = Property::control_equivalent;
  report.artifacts = {"plant", "supervisor", "bipartite"};
  report.verdict = eq.holds;
  if (!eq.holds) report.witness = eq.witness;
  return report;
}

}  // namespace fortress
