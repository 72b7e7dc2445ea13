#include "fortress/alphabet.hpp"

#include <set>

#include "fortress/errors.hpp"

namespace fortress {

Alphabet::Alphabet(std::vector<Event> events) : events_(std::move(events)) {
  if (events_.size() > kMaxEvents) {
    throw InputError("alphabet has " + std::to_string(events_.size()) + " events; at most " +
                     std::to_string(kMaxEvents) + " are supported");
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const Event& e = events_[i];
    if (e.name.empty()) throw InputError("event " + std::to_string(i) + " has an empty name");
    if (e.name.find_first_of("{},: \t\n\"") != std::string::npos) {
      throw InputError("event name '" + e.name + "' is not a plain token");
    }
    if (!seen.insert(e.name).second) throw InputError("duplicate event name '" + e.name + "'");
    if (e.attacker_controllable && !e.attacker_observable) {
      throw InputError("event '" + e.name + "' is attacker-controllable but not attacker-observable");
    }
    if (e.attacker_controllable && !e.controllable) {
      throw InputError("event '" + e.name + "' is attacker-controllable but not controllable");
    }
    const EventMask b = bit(i);
    all_ |= b;
    if (e.controllable) controllable_ |= b;
    if (e.observable) observable_ |= b;
    if (e.attacker_observable) attacker_observable_ |= b;
    if (e.attacker_controllable) attacker_controllable_ |= b;
  }
}

std::optional<std::size_t> Alphabet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].name == name) return i;
  }
  return std::nullopt;
}

std::string Alphabet::mask_name(EventMask m) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if ((m & bit(i)) == 0) continue;
    if (!first) out += ',';
    out += events_[i].name;
    first = false;
  }
  out += '}';
  return out;
}

std::string Alphabet::symbol_name(Symbol s) const {
  if (s.is_command()) return mask_name(s.members());
  if (s.event_index() < events_.size()) return events_[s.event_index()].name;
  return "#" + std::to_string(s.event_index());
}

std::optional<Symbol> Alphabet::parse_symbol(std::string_view text) const {
  auto parse_members = [this](std::string_view body) -> std::optional<Symbol> {
    EventMask m = 0;
    while (!body.empty()) {
      const auto comma = body.find(',');
      const auto name = body.substr(0, comma);
      const auto index = index_of(name);
      if (!index) return std::nullopt;
      m |= bit(*index);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return Symbol::command(m);
  };
  if (text.starts_with("cmd:")) return parse_members(text.substr(4));
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') {
    return parse_members(text.substr(1, text.size() - 2));
  }
  if (auto index = index_of(text)) return Symbol::event(*index);
  return std::nullopt;
}

std::string Alphabet::word_to_string(const std::vector<Symbol>& word) const {
  if (word.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ' ';
    out += symbol_name(word[i]);
  }
  return out;
}

}  // namespace fortress
