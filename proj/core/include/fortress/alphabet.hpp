#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fortress/symbol.hpp"

namespace fortress {

struct Event {
  std::string name;
  bool controllable = false;
  bool observable = false;
  bool attacker_observable = false;
  bool attacker_controllable = false;

  friend bool operator==(const Event&, const Event&) = default;
};

/// The event universe together with its supervisor and attacker partitions.
///
/// Construction validates: unique non-empty names, at most kMaxEvents events,
/// attacker-controllable implies attacker-observable and controllable.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Event> events);

  std::size_t size() const { return events_.size(); }
  const std::vector<Event>& events() const { return events_; }
  const Event& event(std::size_t index) const { return events_.at(index); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  EventMask all() const { return all_; }
  EventMask controllable() const { return controllable_; }
  EventMask uncontrollable() const { return all_ & ~controllable_; }
  EventMask observable() const { return observable_; }
  EventMask unobservable() const { return all_ & ~observable_; }
  EventMask attacker_observable() const { return attacker_observable_; }
  EventMask attacker_controllable() const { return attacker_controllable_; }

  /// Σ as a symbol set (no commands).
  SymbolSet plant_symbols() const { return SymbolSet::of_events(all_); }
  /// Σ ∪ Γ.
  SymbolSet all_symbols() const { return SymbolSet::with_commands(all_); }

  /// Event name, or `{a,b,c}` for a command (members in alphabet order).
  std::string symbol_name(Symbol s) const;
  std::string mask_name(EventMask m) const;
  /// Inverse of symbol_name; also accepts the `cmd:a,b` spelling.
  std::optional<Symbol> parse_symbol(std::string_view text) const;

  std::string word_to_string(const std::vector<Symbol>& word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.events_ == b.events_; }

 private:
  std::vector<Event> events_;
  EventMask all_ = 0;
  EventMask controllable_ = 0;
  EventMask observable_ = 0;
  EventMask attacker_observable_ = 0;
  EventMask attacker_controllable_ = 0;
};

}  // namespace fortress
