#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fortress/alphabet.hpp"
#include "fortress/automaton.hpp"
#include "fortress/supervisor.hpp"

namespace fortress {

struct ProjectOptions {
  PickPolicy pick;
  std::optional<std::size_t> max_states;
  bool resilience_precheck = true;

  friend bool operator==(const ProjectOptions& a, const ProjectOptions& b) {
    return a.pick.kind == b.pick.kind && a.pick.seed == b.pick.seed && a.max_states == b.max_states &&
           a.resilience_precheck == b.resilience_precheck;
  }
};

/// Plant (marked states are damage states), supervisor and options over one
/// event alphabet.
struct Project {
  Alphabet alphabet;
  Automaton plant;
  Automaton supervisor;
  ProjectOptions options;
};

/// Parse errors carry the line number; semantic errors name the offending
/// field, e.g. `plant.transitions[3]: unknown event 'x'`.
Project parse_project(std::string_view text);
Project load_project(const std::filesystem::path& path);
std::string serialize_project(const Project& project);

/// A self-contained saved automaton: its events, the automaton, and state
/// kinds when it is bipartite.
struct Artifact {
  std::string name;
  Alphabet alphabet;
  Automaton automaton;
  std::optional<std::vector<StateKind>> kinds;

  bool bipartite() const { return kinds.has_value(); }
  BipartiteAutomaton as_bipartite() const;
};

std::string serialize_artifact(const Alphabet& alphabet, const Automaton& a, std::string_view name);
std::string serialize_artifact(const Alphabet& alphabet, const BipartiteAutomaton& b, std::string_view name);
Artifact parse_artifact(std::string_view text);

/// Writes the canonical serialization; filesystem failures throw
/// std::system_error.
void save_artifact(const std::filesystem::path& path, const Alphabet& alphabet, const Automaton& a,
                   std::string_view name);
void save_artifact(const std::filesystem::path& path, const Alphabet& alphabet, const BipartiteAutomaton& b,
                   std::string_view name);
Artifact load_artifact(const std::filesystem::path& path);

/// Graphviz text. Control states are boxes, reaction states circles,
/// detect and dump states shaded; marked states get a double border.
std::string to_dot(const Alphabet& alphabet, const Automaton& a, std::string_view name);
std::string to_dot(const Alphabet& alphabet, const BipartiteAutomaton& b, std::string_view name);
void export_dot(const std::filesystem::path& path, const Artifact& artifact);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace fortress
