#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fortress/fortress.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace fortress;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInputError = 2, kCapExceeded = 3, kInternal = 4 };

struct FortifyArgs {
  std::string project;
  std::string out_dir;
  std::string pick;
  bool skip_precheck = false;
  bool intermediates = false;
  std::optional<std::size_t> max_states;
  bool json = false;
};

struct VerifyArgs {
  std::string project;
  std::string what;
  std::string artifact;
  std::string attacker;
  std::optional<std::size_t> max_states;
  bool json = false;
};

struct ExportArgs {
  std::string artifact;
  std::string dot;
};

// Flag beats environment beats project file beats the built-in default.
std::size_t resolve_cap(const std::optional<std::size_t>& flag, const ProjectOptions& options) {
  if (flag) return *flag;
  if (const char* env = std::getenv("FORTRESS_MAX_STATES")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size() && value > 0) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
    }
    throw InputError(std::string("FORTRESS_MAX_STATES must be a positive integer, got '") + env + "'");
  }
  if (options.max_states) return *options.max_states;
  return kDefaultMaxStates;
}

Json word_json(const Alphabet& alphabet, const std::optional<std::vector<Symbol>>& word) {
  if (!word) return nullptr;
  Json out = Json::array();
  for (Symbol s : *word) out.push_back(alphabet.symbol_name(s));
  return out;
}

int run_fortify(const FortifyArgs& args) {
  const Project project = load_project(args.project);
  FortifyOptions options;
  options.pick = project.options.pick;
  if (!args.pick.empty()) {
    auto policy = PickPolicy::parse(args.pick);
    if (!policy) throw InputError("--pick expects 'lex-min' or 'random:<seed>', got '" + args.pick + "'");
    options.pick = *policy;
  }
  options.resilience_precheck = project.options.resilience_precheck && !args.skip_precheck;
  options.max_states = resolve_cap(args.max_states, project.options);

  const FortifyOutcome outcome = fortify(project.plant, project.supervisor, project.alphabet, options);
  const Alphabet& alphabet = project.alphabet;

  const fs::path out = args.out_dir;
  fs::create_directories(out);
  Json files = Json::array();
  auto save = [&](const std::string& file, const auto& artifact, std::string_view name) {
    save_artifact(out / file, alphabet, artifact, name);
    files.push_back(file);
  };
  if (outcome.fs) {
    save("fs.json", *outcome.fs, "FS");
    save("fs_bipartite.json", *outcome.fs_bipartite, "BT(FS)");
  }
  if (args.intermediates) {
    if (outcome.b) save("b.json", outcome.b->automaton, "B");
    if (outcome.bps) save("bps.json", *outcome.bps, "BPS");
    if (outcome.bpns) save("bpns.json", *outcome.bpns, "BPNS");
    if (outcome.bpns_a) save("bpns_attacked.json", *outcome.bpns_a, "BPNS^A");
    if (outcome.attacker) save("attacker.json", *outcome.attacker, "A");
    if (outcome.s0a) save("s0_attacked.json", *outcome.s0a, "S0^A");
    if (outcome.refinement) {
      const auto& chain = outcome.refinement->chain;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        save("s" + std::to_string(k) + ".json", chain[k], "S" + std::to_string(k));
      }
      save("fns.json", outcome.refinement->fns(), "FNS");
    }
  }

  Json report;
  report["decision"] = std::string(to_string(outcome.decision));
  report["pick"] = options.pick.to_string();
  report["procedure3_iterations"] = outcome.iterations();
  Json stages = Json::array();
  for (const auto& st : outcome.stats) {
    stages.push_back({{"stage", st.stage}, {"states", st.states}, {"transitions", st.transitions}});
  }
  report["stages"] = stages;
  report["files"] = files;
  write_text_file(out / "summary.json", report.dump(2) + "\n");

  if (args.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "decision: " << to_string(outcome.decision) << "\n";
    switch (outcome.decision) {
      case Decision::exists: std::cout << "a fortified supervisor exists\n"; break;
      case Decision::not_exists: std::cout << "no fortified supervisor exists\n"; break;
      case Decision::already_resilient: std::cout << "the supervisor is already resilient\n"; break;
    }
    if (outcome.refinement) std::cout << "refinement iterations: " << outcome.iterations() << "\n";
    for (const auto& st : outcome.stats) {
      if (st.states == 0 && st.transitions == 0) continue;
      std::cout << "  " << st.stage << ": " << st.states << " states, " << st.transitions << " transitions\n";
    }
    if (outcome.fs) {
      std::cout << "fortified supervisor: " << (out / "fs.json").string() << " (" << outcome.fs->state_count()
                << " states, pick " << options.pick.to_string() << ")\n";
    }
  }
  for (const auto& st : outcome.stats) std::cerr << "[time] " << st.stage << " " << st.millis << " ms\n";
  std::cerr << "[time] total " << outcome.total_millis << " ms\n";
  return outcome.decision == Decision::not_exists ? kNegative : kOk;
}

void require_same_events(const Artifact& artifact, const Project& project, const std::string& path) {
  if (!(artifact.alphabet == project.alphabet)) {
    throw InputError(path + ": artifact events differ from the project events");
  }
}

// The supervisor a verify command talks about: the project one, or an
// artifact (plain or bipartite) when given.
Automaton candidate_supervisor(const VerifyArgs& args, const Project& project) {
  if (args.artifact.empty()) return project.supervisor;
  const Artifact artifact = load_artifact(args.artifact);
  require_same_events(artifact, project, args.artifact);
  if (artifact.bipartite()) return to_supervisor(artifact.as_bipartite(), project.alphabet);
  return artifact.automaton;
}

int run_verify(const VerifyArgs& args) {
  const Project project = load_project(args.project);
  const Alphabet& alphabet = project.alphabet;
  const std::size_t cap = resolve_cap(args.max_states, project.options);
  const Automaton s = candidate_supervisor(args, project);

  VerificationReport report;
  if (args.what == "resilience") {
    report = check_resilient(project.plant, s, alphabet, cap);
  } else if (args.what == "equivalence") {
    report = check_control_equivalence(project.plant, project.supervisor, s, alphabet, cap);
  } else {
    if (args.attacker.empty()) throw InputError("verify " + args.what + " needs --attacker");
    const Artifact attacker = load_artifact(args.attacker);
    require_same_events(attacker, project, args.attacker);
    const auto valid = validate_supervisor(s, alphabet);
    if (!valid.verdict) throw InputError("invalid supervisor: " + valid.violations.front());
    const BipartiteAutomaton bt_a = attack_bipartize(bipartize(s, alphabet), alphabet);
    const Automaton ce_a = build_ce_attacked(alphabet);
    report = args.what == "covert" ? check_covert(project.plant, ce_a, bt_a, attacker.automaton, alphabet, cap)
                                   : check_damage_reachable(project.plant, ce_a, bt_a, attacker.automaton, alphabet, cap);
  }

  if (args.json) {
    Json out;
    out["property"] = std::string(to_string(report.property));
    out["verdict"] = report.verdict;
    out["witness"] = word_json(alphabet, report.witness);
    out["violations"] = report.violations;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_string(report.property) << ": " << (report.verdict ? "holds" : "does not hold") << "\n";
    if (report.witness) std::cout << "witness: " << alphabet.word_to_string(*report.witness) << "\n";
    for (const auto& v : report.violations) std::cout << "violation: " << v << "\n";
  }
  return report.verdict ? kOk : kNegative;
}

int run_export(const ExportArgs& args) {
  const Artifact artifact = load_artifact(args.artifact);
  export_dot(args.dot, artifact);
  std::cout << "wrote " << args.dot << " (" << artifact.automaton.state_count() << " states)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fortified supervisor synthesis against covert actuator attackers"};
  app.require_subcommand(1);

  FortifyArgs fortify_args;
  auto* fortify_cmd = app.add_subcommand("fortify", "Decide whether a fortified supervisor exists and extract one");
  fortify_cmd->add_option("project", fortify_args.project, "Project file")->required();
  fortify_cmd->add_option("--out", fortify_args.out_dir, "Output directory")->required();
  fortify_cmd->add_option("--pick", fortify_args.pick, "Command pick policy: lex-min or random:<seed>");
  fortify_cmd->add_flag("--skip-resilience-precheck", fortify_args.skip_precheck, "Skip the initial resilience check");
  fortify_cmd->add_flag("--emit-intermediates", fortify_args.intermediates, "Write every intermediate structure");
  fortify_cmd->add_option("--max-states", fortify_args.max_states, "State cap per construction")
      ->check(CLI::PositiveNumber);
  fortify_cmd->add_flag("--json", fortify_args.json, "Print a JSON report");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a property of a supervisor");
  verify_cmd->add_option("project", verify_args.project, "Project file")->required();
  verify_cmd->add_option("property", verify_args.what, "resilience | equivalence | covert | damage")
      ->required()
      ->check(CLI::IsMember({"resilience", "equivalence", "covert", "damage"}));
  verify_cmd->add_option("--artifact", verify_args.artifact, "Supervisor artifact to check instead of the project's");
  verify_cmd->add_option("--attacker", verify_args.attacker, "Attacker artifact (covert, damage)");
  verify_cmd->add_option("--max-states", verify_args.max_states, "State cap per construction")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--json", verify_args.json, "Print a JSON report");

  ExportArgs export_args;
  auto* export_cmd = app.add_subcommand("export", "Export an artifact as Graphviz text");
  export_cmd->add_option("artifact", export_args.artifact, "Artifact file")->required();
  export_cmd->add_option("--dot", export_args.dot, "Output .dot path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*fortify_cmd) return run_fortify(fortify_args);
    if (*verify_cmd) return run_verify(verify_args);
    if (*export_cmd) return run_export(export_args);
  } catch (const SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ExtractionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInputError;
}
