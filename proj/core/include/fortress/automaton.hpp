#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fortress/symbol.hpp"

namespace fortress {

using StateId = std::uint32_t;

struct Transition {
  Symbol symbol;
  StateId target;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Deterministic finite automaton with a partial transition function.
///
/// States are dense ids in creation order; each carries a label used for
/// serialization and debugging. Outgoing transitions of a state are kept
/// sorted by symbol. An automaton with no states is the empty automaton: its
/// closed and marked languages are both empty.
class Automaton {
 public:
  Automaton() = default;
  explicit Automaton(SymbolSet alphabet) : alphabet_(alphabet) {}

  StateId add_state(std::string label, bool marked = false);
  void set_initial(StateId q);
  void set_marked(StateId q, bool marked = true);
  /// Adds q --s--> target. Re-adding the same arc is a no-op; a conflicting
  /// target throws, since the automaton must stay deterministic.
  void add_transition(StateId from, Symbol s, StateId to);
  void reserve(std::size_t states);

  const SymbolSet& alphabet() const { return alphabet_; }
  void set_alphabet(SymbolSet alphabet) { alphabet_ = alphabet; }

  std::size_t state_count() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::optional<StateId> initial() const { return initial_; }
  bool is_marked(StateId q) const { return marked_[q]; }
  bool has_marked_states() const;
  std::vector<StateId> marked_states() const;
  const std::string& label(StateId q) const { return labels_[q]; }
  std::optional<StateId> find_state(const std::string& label) const;

  std::span<const Transition> transitions(StateId q) const { return out_[q]; }
  std::optional<StateId> successor(StateId q, Symbol s) const;
  bool defined(StateId q, Symbol s) const { return successor(q, s).has_value(); }
  /// Events defined at q, as a mask (commands ignored).
  EventMask enabled_events(StateId q) const;
  std::size_t transition_count() const;

  /// State reached by running `word` from the initial state, if defined.
  std::optional<StateId> run(std::span<const Symbol> word) const;
  bool accepts(std::span<const Symbol> word) const { return run(word).has_value(); }

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  SymbolSet alphabet_;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> marked_;
  std::vector<std::vector<Transition>> out_;
  std::optional<StateId> initial_;
};

}  // namespace fortress
