#pragma once

#include "fortress/alphabet.hpp"
#include "fortress/automaton.hpp"
#include "fortress/operations.hpp"
#include "fortress/report.hpp"
#include "fortress/supervisor.hpp"

namespace fortress {

/// The attacked closed loop G || CE^A || X^A || A with the bipartite
/// component of each state.
struct ClosedLoop {
  Automaton automaton;
  std::vector<StateId> structure_state;
};

ClosedLoop attacked_closed_loop(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                                const Automaton& attacker, std::size_t max_states = kDefaultMaxStates);

/// Attacker admissibility on the attacked closed loop: symbols the attacker
/// cannot disable are never disabled, and events it cannot observe are
/// self-loops.
VerificationReport validate_attacker(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                                     const Automaton& attacker, const Alphabet& alphabet,
                                     std::size_t max_states = kDefaultMaxStates);

/// True iff no closed-loop state with a detect component is reachable.
/// Throws InputError for an inadmissible attacker.
VerificationReport check_covert(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                                const Automaton& attacker, const Alphabet& alphabet,
                                std::size_t max_states = kDefaultMaxStates);

/// True iff a damage state is reachable in the attacked closed loop.
VerificationReport check_damage_reachable(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bt_a,
                                          const Automaton& attacker, const Alphabet& alphabet,
                                          std::size_t max_states = kDefaultMaxStates);

/// Resilience by synthesis of the supremal covert attacker against BT(S)^A.
/// The witness, when not resilient, is a shortest covert damage string.
VerificationReport check_resilient(const Automaton& g, const Automaton& s, const Alphabet& alphabet,
                                   std::size_t max_states = kDefaultMaxStates);
VerificationReport check_resilient(const Automaton& g, const BipartiteAutomaton& bt, const Alphabet& alphabet,
                                   std::size_t max_states = kDefaultMaxStates);

/// Equality of P_{Σo}(G || S) and P_{Σo}(G || S2); witness is a shortest
/// distinguishing string.
VerificationReport check_control_equivalence(const Automaton& g, const Automaton& s, const Automaton& s2,
                                             const Alphabet& alphabet, std::size_t max_states = kDefaultMaxStates);

/// L(G || S) = P_Σ(L(G || CE || bt)).
VerificationReport check_bipartite_equivalence(const Automaton& g, const Automaton& s, const BipartiteAutomaton& bt,
                                               const Alphabet& alphabet, std::size_t max_states = kDefaultMaxStates);

}  // namespace fortress
