#include "fortress/io.hpp"

#include <algorithm>
#include <cerrno>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "fortress/errors.hpp"

namespace fortress {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kArtifactFormat = "fortress-artifact";

std::string command_token(const Alphabet& alphabet, Symbol s) {
  if (s.is_event()) return alphabet.event(s.event_index()).name;
  std::string out = "cmd:";
  bool first = true;
  for (std::size_t e = 0; e < alphabet.size(); ++e) {
    if ((s.members() & bit(e)) == 0) continue;
    if (!first) out += ',';
    out += alphabet.event(e).name;
    first = false;
  }
  return out;
}

// Labels are the on-disk state names, so they must be unique. Later
// duplicates get a `#<id>` suffix.
std::vector<std::string> state_names(const Automaton& a) {
  std::vector<std::string> names;
  std::set<std::string> used;
  names.reserve(a.state_count());
  for (StateId q = 0; q < a.state_count(); ++q) {
    std::string name = a.label(q);
    if (name.empty() || used.count(name)) name += "#" + std::to_string(q);
    while (used.count(name)) name += "'";
    used.insert(name);
    names.push_back(std::move(name));
  }
  return names;
}

Json events_json(const Alphabet& alphabet) {
  Json events = Json::array();
  for (const auto& e : alphabet.events()) {
    events.push_back({{"name", e.name},
                      {"controllable", e.controllable},
                      {"observable", e.observable},
                      {"attacker_observable", e.attacker_observable},
                      {"attacker_controllable", e.attacker_controllable}});
  }
  return events;
}

Json automaton_json(const Alphabet& alphabet, const Automaton& a, SymbolSet default_alphabet) {
  const auto names = state_names(a);
  Json out;
  if (a.alphabet() != default_alphabet) {
    Json events = Json::array();
    for (std::size_t e = 0; e < alphabet.size(); ++e) {
      if (a.alphabet().events & bit(e)) events.push_back(alphabet.event(e).name);
    }
    out["alphabet"] = {{"events", events}, {"commands", a.alphabet().commands}};
  }
  out["states"] = names;
  out["initial"] = a.initial() ? Json(names[*a.initial()]) : Json(nullptr);
  Json marked = Json::array();
  for (StateId q : a.marked_states()) marked.push_back(names[q]);
  out["marked"] = marked;
  Json transitions = Json::array();
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (const auto& t : a.transitions(q)) {
      transitions.push_back(Json::array({names[q], command_token(alphabet, t.symbol), names[t.target]}));
    }
  }
  out["transitions"] = transitions;
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Field-path aware accessors.
[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

bool optional_bool(const Json& obj, const char* key, bool fallback, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) fail(where + "." + key, "expected a boolean");
  return it->get<bool>();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw InputError("parse error at line " + std::to_string(line) + ": " + e.what());
  }
}

Alphabet parse_events(const Json& root) {
  const Json& events = field(root, "events", "root");
  if (!events.is_array()) fail("events", "expected an array");
  std::vector<Event> parsed;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string where = "events[" + std::to_string(i) + "]";
    const Json& e = events[i];
    Event ev;
    ev.name = as_string(field(e, "name", where), where + ".name");
    ev.controllable = optional_bool(e, "controllable", false, where);
    ev.observable = optional_bool(e, "observable", false, where);
    ev.attacker_observable = optional_bool(e, "attacker_observable", false, where);
    ev.attacker_controllable = optional_bool(e, "attacker_controllable", false, where);
    parsed.push_back(std::move(ev));
  }
  try {
    return Alphabet(std::move(parsed));
  } catch (const InputError& e) {
    fail("events", e.what());
  }
}

Automaton parse_automaton(const Json& j, const Alphabet& alphabet, SymbolSet default_alphabet,
                          const std::string& where) {
  SymbolSet symbols = default_alphabet;
  if (auto it = j.find("alphabet"); it != j.end()) {
    const std::string w = where + ".alphabet";
    const Json& names = field(*it, "events", w);
    if (!names.is_array()) fail(w + ".events", "expected an array");
    symbols = SymbolSet{};
    for (const auto& n : names) {
      const std::string name = as_string(n, w + ".events");
      auto idx = alphabet.index_of(name);
      if (!idx) fail(w + ".events", "unknown event '" + name + "'");
      symbols.events |= bit(*idx);
    }
    symbols.commands = optional_bool(*it, "commands", false, w);
  }
  Automaton a(symbols);
  const Json& states = field(j, "states", where);
  if (!states.is_array()) fail(where + ".states", "expected an array");
  std::map<std::string, StateId> ids;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string name = as_string(states[i], where + ".states[" + std::to_string(i) + "]");
    if (ids.count(name)) fail(where + ".states[" + std::to_string(i) + "]", "duplicate state '" + name + "'");
    ids.emplace(name, a.add_state(name));
  }
  auto lookup = [&](const Json& n, const std::string& w) {
    const std::string name = as_string(n, w);
    auto it = ids.find(name);
    if (it == ids.end()) fail(w, "unknown state '" + name + "'");
    return it->second;
  };
  const Json& initial = field(j, "initial", where);
  if (initial.is_null()) {
    if (!states.empty()) fail(where + ".initial", "missing initial state");
  } else {
    a.set_initial(lookup(initial, where + ".initial"));
  }
  if (auto it = j.find("marked"); it != j.end()) {
    if (!it->is_array()) fail(where + ".marked", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      a.set_marked(lookup((*it)[i], where + ".marked[" + std::to_string(i) + "]"));
    }
  }
  if (auto it = j.find("transitions"); it != j.end()) {
    if (!it->is_array()) fail(where + ".transitions", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string w = where + ".transitions[" + std::to_string(i) + "]";
      const Json& t = (*it)[i];
      if (!t.is_array() || t.size() != 3) fail(w, "expected [from, symbol, to]");
      const StateId from = lookup(t[0], w);
      const std::string token = as_string(t[1], w);
      auto symbol = alphabet.parse_symbol(token);
      if (!symbol) fail(w, "unknown event '" + token + "'");
      const StateId to = lookup(t[2], w);
      try {
        a.add_transition(from, *symbol, to);
      } catch (const InputError& e) {
        fail(w, e.what());
      }
    }
  }
  return a;
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string dot_text(const Alphabet& alphabet, const Automaton& a, const std::vector<StateKind>* kinds,
                     std::string_view name) {
  const auto names = state_names(a);
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  if (a.initial()) {
    out << "  \"__start\" [shape=point, label=\"\"];\n";
    out << "  \"__start\" -> " << quote(names[*a.initial()]) << ";\n";
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    std::vector<std::string> attrs;
    const bool marked = a.is_marked(q);
    if (kinds) {
      switch ((*kinds)[q]) {
        case StateKind::control: attrs.push_back(marked ? "shape=box, peripheries=2" : "shape=box"); break;
        case StateKind::reaction: if (marked) attrs.push_back("shape=doublecircle"); break;
        case StateKind::detect:
        case StateKind::dump: attrs.push_back("style=filled, fillcolor=lightgray"); break;
      }
    } else if (marked) {
      attrs.push_back("shape=doublecircle");
    }
    out << "  " << quote(names[q]);
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (const auto& t : a.transitions(q)) {
      out << "  " << quote(names[q]) << " -> " << quote(names[t.target])
          << " [label=" << quote(alphabet.symbol_name(t.symbol)) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

Project parse_project(std::string_view text) {
  const Json root = parse_json(text);
  if (!root.is_object()) fail("root", "expected an object");
  Project p;
  p.alphabet = parse_events(root);
  const SymbolSet sigma = p.alphabet.plant_symbols();
  p.plant = parse_automaton(field(root, "plant", "root"), p.alphabet, sigma, "plant");
  p.supervisor = parse_automaton(field(root, "supervisor", "root"), p.alphabet, sigma, "supervisor");
  if (p.plant.alphabet().commands || p.supervisor.alphabet().commands) {
    fail("root", "plant and supervisor must not use control commands");
  }
  if (auto it = root.find("options"); it != root.end()) {
    const Json& o = *it;
    if (!o.is_object()) fail("options", "expected an object");
    if (auto pick = o.find("pick"); pick != o.end()) {
      const std::string text_pick = as_string(*pick, "options.pick");
      auto policy = PickPolicy::parse(text_pick);
      if (!policy) fail("options.pick", "expected 'lex-min' or 'random:<seed>', got '" + text_pick + "'");
      p.options.pick = *policy;
    }
    if (auto cap = o.find("max_states"); cap != o.end()) {
      if (!cap->is_number_unsigned() || cap->get<std::size_t>() == 0) {
        fail("options.max_states", "expected a positive integer");
      }
      p.options.max_states = cap->get<std::size_t>();
    }
    p.options.resilience_precheck = optional_bool(o, "resilience_precheck", true, "options");
  }
  return p;
}

Project load_project(const std::filesystem::path& path) { return parse_project(read_text_file(path)); }

std::string serialize_project(const Project& project) {
  const SymbolSet sigma = project.alphabet.plant_symbols();
  Json root;
  root["events"] = events_json(project.alphabet);
  root["plant"] = automaton_json(project.alphabet, project.plant, sigma);
  root["supervisor"] = automaton_json(project.alphabet, project.supervisor, sigma);
  Json options;
  options["pick"] = project.options.pick.to_string();
  if (project.options.max_states) options["max_states"] = *project.options.max_states;
  options["resilience_precheck"] = project.options.resilience_precheck;
  root["options"] = options;
  return dump(root);
}

BipartiteAutomaton Artifact::as_bipartite() const {
  if (!kinds) throw InputError("artifact '" + name + "' is not bipartite");
  return {automaton, *kinds};
}

std::string serialize_artifact(const Alphabet& alphabet, const Automaton& a, std::string_view name) {
  Json root;
  root["format"] = kArtifactFormat;
  root["name"] = name;
  root["events"] = events_json(alphabet);
  root["automaton"] = automaton_json(alphabet, a, alphabet.plant_symbols());
  return dump(root);
}

std::string serialize_artifact(const Alphabet& alphabet, const BipartiteAutomaton& b, std::string_view name) {
  Json root;
  root["format"] = kArtifactFormat;
  root["name"] = name;
  root["events"] = events_json(alphabet);
  root["automaton"] = automaton_json(alphabet, b.automaton, alphabet.all_symbols());
  Json kinds = Json::array();
  for (StateKind k : b.kinds) kinds.push_back(std::string(to_string(k)));
  root["kinds"] = kinds;
  return dump(root);
}

Artifact parse_artifact(std::string_view text) {
  const Json root = parse_json(text);
  if (!root.is_object()) fail("root", "expected an object");
  if (as_string(field(root, "format", "root"), "format") != kArtifactFormat) {
    fail("format", "not a fortress artifact");
  }
  Artifact out;
  out.name = as_string(field(root, "name", "root"), "name");
  out.alphabet = parse_events(root);
  const bool bipartite = root.contains("kinds");
  const SymbolSet fallback = bipartite ? out.alphabet.all_symbols() : out.alphabet.plant_symbols();
  out.automaton = parse_automaton(field(root, "automaton", "root"), out.alphabet, fallback, "automaton");
  if (bipartite) {
    const Json& kinds = root["kinds"];
    if (!kinds.is_array() || kinds.size() != out.automaton.state_count()) {
      fail("kinds", "expected one kind per state");
    }
    std::vector<StateKind> parsed;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      const std::string w = "kinds[" + std::to_string(i) + "]";
      auto k = parse_state_kind(as_string(kinds[i], w));
      if (!k) fail(w, "unknown state kind");
      parsed.push_back(*k);
    }
    out.kinds = std::move(parsed);
  }
  return out;
}

void save_artifact(const std::filesystem::path& path, const Alphabet& alphabet, const Automaton& a,
                   std::string_view name) {
  write_text_file(path, serialize_artifact(alphabet, a, name));
}

void save_artifact(const std::filesystem::path& path, const Alphabet& alphabet, const BipartiteAutomaton& b,
                   std::string_view name) {
  write_text_file(path, serialize_artifact(alphabet, b, name));
}

Artifact load_artifact(const std::filesystem::path& path) { return parse_artifact(read_text_file(path)); }

std::string to_dot(const Alphabet& alphabet, const Automaton& a, std::string_view name) {
  return dot_text(alphabet, a, nullptr, name);
}

std::string to_dot(const Alphabet& alphabet, const BipartiteAutomaton& b, std::string_view name) {
  return dot_text(alphabet, b.automaton, &b.kinds, name);
}

void export_dot(const std::filesystem::path& path, const Artifact& artifact) {
  write_text_file(path, artifact.kinds ? dot_text(artifact.alphabet, artifact.automaton, &*artifact.kinds, artifact.name)
                                       : dot_text(artifact.alphabet, artifact.automaton, nullptr, artifact.name));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::system_error(errno, std::generic_category(), "write failed for " + path.string());
}

}  // namespace fortress
