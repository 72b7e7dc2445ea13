#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fortress/automaton.hpp"

namespace fortress {

inline constexpr std::size_t kDefaultMaxStates = 2'000'000;

/// Sorted, duplicate-free set of states; one state of a subset construction.
using StateSet = std::vector<StateId>;

/// Sub-automaton reachable from the initial state. Surviving states keep
/// their relative order.
Automaton accessible(const Automaton& a);

struct Product {
  Automaton automaton;
  /// For every product state, the pair of operand states it stands for.
  std::vector<std::array<StateId, 2>> origin;
};

/// Synchronous product, accessible part only. Shared symbols synchronize,
/// private symbols interleave. If both operands have marked states a pair is
/// marked when both components are; if only one operand has marked states the
/// marking lifts from that side.
Product compose_tracked(const Automaton& a, const Automaton& b, std::size_t max_states = kDefaultMaxStates);
Automaton parallel_compose(const Automaton& a, const Automaton& b, std::size_t max_states = kDefaultMaxStates);

/// States reachable from `q` through symbols outside `observed`, including q.
StateSet unobservable_reach(const Automaton& a, StateId q, const SymbolSet& observed);
StateSet unobservable_reach(const Automaton& a, std::span<const StateId> from, const SymbolSet& observed);

struct SubsetConstruction {
  Automaton automaton;
  /// Member states of the original automaton for every estimate.
  std::vector<StateSet> members;
};

/// Subset construction keeping unobserved symbols as self-loops: an observed
/// symbol moves an estimate to the unobservable reach of its successors, an
/// unobserved symbol defined at some member loops on the estimate.
SubsetConstruction subset_construct_detailed(const Automaton& a, const SymbolSet& observed,
                                             std::size_t max_states = kDefaultMaxStates);
Automaton subset_construct(const Automaton& a, const SymbolSet& observed, std::size_t max_states = kDefaultMaxStates);

/// Deterministic automaton for the natural projection of L(a) onto `kept`.
/// Unlike subset_construct, erased symbols disappear from the result.
Automaton project(const Automaton& a, const SymbolSet& kept, std::size_t max_states = kDefaultMaxStates);

/// Deletes `bad` states and their arcs. Removing the initial state yields the
/// empty automaton (same alphabet). No trimming of unreachable survivors.
Automaton remove_states(const Automaton& a, std::span<const StateId> bad);

struct LanguageCheck {
  bool holds = false;
  /// Shortest counterexample when `holds` is false (or witness for
  /// marker_reachable when it is true).
  std::vector<Symbol> witness;
};

/// L(a) ⊆ L(b); on failure the witness is a shortest string in L(a) \ L(b).
LanguageCheck language_included(const Automaton& a, const Automaton& b);
/// L(a) = L(b); on failure the witness is a shortest distinguishing string.
LanguageCheck language_equal(const Automaton& a, const Automaton& b);
/// L_m(a) ≠ ∅, with a shortest marked string as witness.
LanguageCheck marker_reachable(const Automaton& a);

/// Shortest word from the initial state to any state satisfying `target`.
std::optional<std::vector<Symbol>> shortest_word_to(const Automaton& a, std::span<const std::uint8_t> target);

}  // namespace fortress
