#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fortress/alphabet.hpp"
#include "fortress/automaton.hpp"
#include "fortress/commands.hpp"
#include "fortress/operations.hpp"
#include "fortress/supervisor.hpp"

namespace fortress {

/// (controllable, observable). Symbols may be events or commands; the
/// controllable set must be contained in the observable one.
struct ControlConstraint {
  SymbolSet controllable;
  SymbolSet observable;
};

/// Supremal controllable and normal sublanguage of L(plant) ∩ L(legal),
/// realized as a supervisor R over the plant alphabet. L(R || plant) is the
/// supremal language; R is empty if even ε cannot be kept.
///
/// R has one state per winning observation estimate. Symbols outside the
/// legal alphabet are unconstrained by `legal`.
Automaton supcn_synthesize(const Automaton& plant, const Automaton& legal, const ControlConstraint& cc,
                           std::size_t max_states = kDefaultMaxStates);

/// Composition G || CE^A || X^A used by the attacker synthesis, with the
/// bipartite component of every state recorded.
struct AttackArena {
  Automaton automaton;
  std::vector<StateId> structure_state;
};

AttackArena build_attack_arena(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& target_a,
                               std::size_t max_states = kDefaultMaxStates);

struct AttackerSynthesis {
  AttackArena arena;
  /// Â; empty if the attacker cannot even start covertly.
  Automaton attacker;
};

/// Supremal covert attacker against the attacked structure `target_a`
/// (BPNS^A(S) or BT(S)^A): detect states are illegal, control constraint
/// (Σ_{c,a}, Σ_{o,a} ∪ Γ).
AttackerSynthesis synthesize_attacker(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& target_a,
                                      const Alphabet& alphabet, std::size_t max_states = kDefaultMaxStates);

/// Prunes commands of bpns_a so that no covert damage string of the attacker
/// survives. Returns S0^A, already normalized by composition with bpns_a.
BipartiteAutomaton prune_commands(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bpns_a,
                                  const Automaton& attacker, const Alphabet& alphabet,
                                  std::span<const Symbol> commands, std::size_t max_states = kDefaultMaxStates);

struct Refinement {
  /// S_0, S_1, ..., the last one being FNS.
  std::vector<BipartiteAutomaton> chain;
  /// Removal rounds. When the initial control state itself runs out of
  /// commands the chain ends with the empty structure; that step is not a
  /// round.
  std::size_t iterations = 0;
  const BipartiteAutomaton& fns() const { return chain.back(); }
};

/// Removes command-less control states by repeated synthesis until every
/// control state issues a command.
Refinement refine_commands(const BipartiteAutomaton& s0, const Alphabet& alphabet,
                           std::size_t max_states = kDefaultMaxStates);

enum class Decision { exists, not_exists, already_resilient };

std::string_view to_string(Decision d);

struct FortifyOptions {
  PickPolicy pick;
  bool resilience_precheck = true;
  std::size_t max_states = kDefaultMaxStates;
  std::size_t max_controllable = kDefaultMaxControllable;
};

struct StageStats {
  std::string stage;
  std::size_t states = 0;
  std::size_t transitions = 0;
  double millis = 0;
};

struct FortifyOutcome {
  Decision decision = Decision::not_exists;
  std::optional<ClosedLoopObserver> b;
  std::optional<BipartiteAutomaton> bps;
  std::optional<BipartiteAutomaton> bpns;
  std::optional<BipartiteAutomaton> bpns_a;
  std::optional<Automaton> attacker;
  std::optional<BipartiteAutomaton> s0a;
  std::optional<BipartiteAutomaton> s0;
  std::optional<Refinement> refinement;
  /// Bipartite form of the fortified supervisor and its folding over Σ.
  std::optional<BipartiteAutomaton> fs_bipartite;
  std::optional<Automaton> fs;
  std::vector<StageStats> stats;
  double total_millis = 0;

  std::size_t iterations() const { return refinement ? refinement->iterations : 0; }
};

/// Full decision pipeline. Throws SizeLimitError naming the stage whose
/// construction exceeded the cap, and InternalError if an extracted
/// supervisor fails verification.
FortifyOutcome fortify(const Automaton& g, const Automaton& s, const Alphabet& alphabet,
                       const FortifyOptions& options = {});

}  // namespace fortress
