#include "fortress/automaton.hpp"

#include <algorithm>
#include <stdexcept>

#include "fortress/errors.hpp"

namespace fortress {

namespace {

auto symbol_less = [](const Transition& t, Symbol s) { return t.symbol < s; };

}  // namespace

StateId Automaton::add_state(std::string label, bool marked) {
  const auto id = static_cast<StateId>(labels_.size());
  labels_.push_back(std::move(label));
  marked_.push_back(marked ? 1 : 0);
  out_.emplace_back();
  return id;
}

void Automaton::reserve(std::size_t states) {
  labels_.reserve(states);
  marked_.reserve(states);
  out_.reserve(states);
}

void Automaton::set_initial(StateId q) {
  if (q >= labels_.size()) throw std::out_of_range("initial state out of range");
  initial_ = q;
}

void Automaton::set_marked(StateId q, bool marked) { marked_.at(q) = marked ? 1 : 0; }

void Automaton::add_transition(StateId from, Symbol s, StateId to) {
  if (from >= labels_.size() || to >= labels_.size()) throw std::out_of_range("transition endpoint out of range");
  if (!alphabet_.contains(s)) throw InputError("transition symbol outside the automaton alphabet");
  auto& arcs = out_[from];
  if (arcs.empty() || arcs.back().symbol < s) {
    arcs.push_back({s, to});
    return;
  }
  auto it = std::lower_bound(arcs.begin(), arcs.end(), s, symbol_less);
  if (it != arcs.end() && it->symbol == s) {
    if (it->target != to) {
      throw InputError("nondeterministic transition at state '" + labels_[from] + "'");
    }
    return;
  }
  arcs.insert(it, {s, to});
}

bool Automaton::has_marked_states() const {
  return std::any_of(marked_.begin(), marked_.end(), [](std::uint8_t m) { return m != 0; });
}

std::vector<StateId> Automaton::marked_states() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < marked_.size(); ++q) {
    if (marked_[q]) out.push_back(q);
  }
  return out;
}

std::optional<StateId> Automaton::find_state(const std::string& label) const {
  for (StateId q = 0; q < labels_.size(); ++q) {
    if (labels_[q] == label) return q;
  }
  return std::nullopt;
}

std::optional<StateId> Automaton::successor(StateId q, Symbol s) const {
  const auto& arcs = out_[q];
  auto it = std::lower_bound(arcs.begin(), arcs.end(), s, symbol_less);
  if (it != arcs.end() && it->symbol == s) return it->target;
  return std::nullopt;
}

EventMask Automaton::enabled_events(StateId q) const {
  EventMask m = 0;
  for (const auto& t : out_[q]) {
    if (t.symbol.is_event()) m |= bit(t.symbol.event_index());
  }
  return m;
}

std::size_t Automaton::transition_count() const {
  std::size_t n = 0;
  for (const auto& arcs : out_) n += arcs.size();
  return n;
}

std::optional<StateId> Automaton::run(std::span<const Symbol> word) const {
  if (!initial_) return std::nullopt;
  StateId q = *initial_;
  for (Symbol s : word) {
    auto next = successor(q, s);
    if (!next) return std::nullopt;
    q = *next;
  }
  return q;
}

}  // namespace fortress
