#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace fortress {

/// Bitmask over the events of an Alphabet (bit i = event index i).
using EventMask = std::uint64_t;

inline constexpr std::size_t kMaxEvents = 63;

inline constexpr bool subset_of(EventMask a, EventMask b) { return (a & ~b) == 0; }
inline constexpr EventMask bit(std::size_t index) { return EventMask{1} << index; }
inline int popcount(EventMask m) { return std::popcount(m); }

/// A symbol is either a plant event or a control command.
///
/// Plant events and control commands share one symbol universe so that every
/// composition is uniform. A command is identified by its member set over the
/// events. Events order before commands; commands order by member bitmask.
class Symbol {
 public:
  constexpr Symbol() = default;

  static constexpr Symbol event(std::size_t index) { return Symbol{static_cast<std::uint64_t>(index)}; }
  static constexpr Symbol command(EventMask members) { return Symbol{kCommandFlag | members}; }

  constexpr bool is_event() const { return (bits_ & kCommandFlag) == 0; }
  constexpr bool is_command() const { return !is_event(); }
  constexpr std::size_t event_index() const { return static_cast<std::size_t>(bits_); }
  constexpr EventMask members() const { return bits_ & ~kCommandFlag; }
  constexpr std::uint64_t raw() const { return bits_; }

  friend constexpr auto operator<=>(Symbol, Symbol) = default;

 private:
  static constexpr std::uint64_t kCommandFlag = std::uint64_t{1} << 63;
  constexpr explicit Symbol(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// A set of symbols: a subset of the events plus either all commands or none.
///
/// Every symbol set the constructions need (alphabets, observation sets,
/// control sets) has this shape, so the command part is a single flag.
struct SymbolSet {
  EventMask events = 0;
  bool commands = false;

  constexpr bool contains(Symbol s) const {
    return s.is_command() ? commands : (events & bit(s.event_index())) != 0;
  }
  constexpr bool subset_of(const SymbolSet& other) const {
    return fortress::subset_of(events, other.events) && (!commands || other.commands);
  }
  constexpr SymbolSet operator|(const SymbolSet& o) const { return {events | o.events, commands || o.commands}; }
  constexpr SymbolSet operator&(const SymbolSet& o) const { return {events & o.events, commands && o.commands}; }
  friend constexpr bool operator==(const SymbolSet&, const SymbolSet&) = default;

  static constexpr SymbolSet of_events(EventMask m) { return {m, false}; }
  static constexpr SymbolSet with_commands(EventMask m) { return {m, true}; }
};

}  // namespace fortress

template <>
struct std::hash<fortress::Symbol> {
  std::size_t operator()(fortress::Symbol s) const noexcept { return std::hash<std::uint64_t>{}(s.raw()); }
};
