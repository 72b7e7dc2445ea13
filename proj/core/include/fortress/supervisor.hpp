#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fortress/alphabet.hpp"
#include "fortress/automaton.hpp"
#include "fortress/operations.hpp"
#include "fortress/report.hpp"

namespace fortress {

enum class StateKind : std::uint8_t { control, reaction, detect, dump };

std::string_view to_string(StateKind k);
std::optional<StateKind> parse_state_kind(std::string_view text);

/// An automaton over Σ ∪ Γ alternating command-issuing control states and
/// observation-receiving reaction states. `kinds[q]` tags every state.
struct BipartiteAutomaton {
  Automaton automaton;
  std::vector<StateKind> kinds;

  std::size_t state_count() const { return automaton.state_count(); }
  bool empty() const { return automaton.empty(); }
  std::vector<StateId> states_of(StateKind k) const;
  /// Commands defined at q, in symbol order.
  std::vector<Symbol> commands_at(StateId q) const;

  friend bool operator==(const BipartiteAutomaton&, const BipartiteAutomaton&) = default;
};

/// Accessible part of a bipartite structure, kinds carried along.
BipartiteAutomaton accessible(const BipartiteAutomaton& b);

/// Product `b || other` tagged with the kinds of b's component. This is the
/// normalization that restores the bipartite shape after synthesis.
BipartiteAutomaton compose_bipartite(const BipartiteAutomaton& b, const Automaton& other,
                                     std::size_t max_states = kDefaultMaxStates);

/// Controllability (every uncontrollable event defined everywhere) and
/// observability (defined unobservable events are self-loops).
VerificationReport validate_supervisor(const Automaton& s, const Alphabet& alphabet);

/// Structural invariants of a bipartite structure: control states carry only
/// commands, reaction states only events with unobservable self-loops, the
/// initial state is a control state.
VerificationReport validate_bipartite(const BipartiteAutomaton& b, const Alphabet& alphabet);

/// BT(S). States are interleaved: 2i is the control state of supervisor state
/// i and 2i+1 its reaction state.
BipartiteAutomaton bipartize(const Automaton& s, const Alphabet& alphabet);

/// BT(S)^A: adds `detect`, self-loops for attackable unobservable events and
/// arcs to `detect` for observations the structure does not expect.
BipartiteAutomaton attack_bipartize(const BipartiteAutomaton& bt, const Alphabet& alphabet);

/// B = P_{Σo}(G || S) together with the (plant, supervisor) pairs of each
/// estimate.
struct ClosedLoopObserver {
  Automaton automaton;
  std::vector<std::vector<std::array<StateId, 2>>> members;
};

ClosedLoopObserver observe_closed_loop(const Automaton& g, const Automaton& s, const Alphabet& alphabet,
                                       std::size_t max_states = kDefaultMaxStates);

/// Behavior-preserving structure over B: a command γ is admitted at q^com iff
/// En_B(q) ⊆ γ and no member plant state can execute an event of γ outside
/// En_B(q).
BipartiteAutomaton build_bps(const ClosedLoopObserver& b, const Automaton& g, const Alphabet& alphabet,
                             std::span<const Symbol> commands);

/// BPNS(S) = BPS(S) || CE, tagged control where CE sits in its initial state.
BipartiteAutomaton build_bpns(const BipartiteAutomaton& bps, const Automaton& ce,
                              std::size_t max_states = kDefaultMaxStates);

/// BPNS^A(S): same augmentation as attack_bipartize.
BipartiteAutomaton attack_bpns(const BipartiteAutomaton& bpns, const Alphabet& alphabet);

/// Drops attacker-induced behavior: after each command arc only the members
/// of the command remain enabled. Result is accessible.
BipartiteAutomaton strip_attack(const BipartiteAutomaton& s0a, const Alphabet& alphabet);

struct PickPolicy {
  enum class Kind { lex_min, seeded_random };
  Kind kind = Kind::lex_min;
  std::uint64_t seed = 0;

  static PickPolicy lex_min() { return {}; }
  static PickPolicy random(std::uint64_t seed) { return {Kind::seeded_random, seed}; }
  std::string to_string() const;
  /// `lex-min` or `random:<seed>`.
  static std::optional<PickPolicy> parse(std::string_view text);
};

/// Keeps one command per control state (chosen by `policy`) and every
/// reaction arc, then trims. Throws ExtractionError if a reachable control
/// state has no command.
BipartiteAutomaton extract_deterministic(const BipartiteAutomaton& fns, const PickPolicy& policy = {});

/// A deterministic supervisor inside `fns` whose language contains `t`.
/// Builds the observation-completed automaton of `t`, composes it with fns and
/// resolves the remaining command choices with `policy`.
BipartiteAutomaton witness_supervisor(const BipartiteAutomaton& fns, std::span<const Symbol> t,
                                      const Alphabet& alphabet, std::span<const Symbol> commands,
                                      const PickPolicy& policy = {}, std::size_t max_states = kDefaultMaxStates);

/// Folds a command-deterministic bipartite structure back into an ordinary
/// supervisor over Σ: one state per reachable reaction state.
Automaton to_supervisor(const BipartiteAutomaton& bt, const Alphabet& alphabet);

}  // namespace fortress
