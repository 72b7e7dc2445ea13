#include <chrono>

#include "fortress/errors.hpp"
#include "fortress/synthesis.hpp"
#include "fortress/verification.hpp"

namespace fortress {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
auto run_stage(FortifyOutcome& out, const std::string& name, F&& body) {
  const auto start = Clock::now();
  try {
    auto result = body();
    out.stats.push_back({name, 0, 0, millis_since(start)});
    return result;
  } catch (const SizeLimitError& e) {
    throw e.with_stage(name);
  }
}

void record_size(FortifyOutcome& out, const Automaton& a) {
  out.stats.back().states = a.state_count();
  out.stats.back().transitions = a.transition_count();
}

}  // namespace

FortifyOutcome fortify(const Automaton& g, const Automaton& s, const Alphabet& alphabet,
                       const FortifyOptions& options) {
  const auto start = Clock::now();
  const std::size_t cap = options.max_states;
  FortifyOutcome out;

  if (g.alphabet() != alphabet.plant_symbols()) throw InputError("plant alphabet must be the declared event set");
  if (!g.initial()) throw InputError("plant has no initial state");
  const auto valid = validate_supervisor(s, alphabet);
  if (!valid.verdict) throw InputError("invalid supervisor: " + valid.violations.front());

  if (options.resilience_precheck) {
    const auto report = run_stage(out, "resilience precheck", [&] { return check_resilient(g, s, alphabet, cap); });
    if (report.verdict) {
      out.decision = Decision::already_resilient;
      out.fs = s;
      out.fs_bipartite = bipartize(s, alphabet);
      out.total_millis = millis_since(start);
      return out;
    }
  }

  const auto commands = run_stage(out, "commands", [&] { return enumerate_commands(alphabet, options.max_controllable); });
  out.b = run_stage(out, "observer", [&] { return observe_closed_loop(g, s, alphabet, cap); });
  record_size(out, out.b->automaton);
  out.bps = run_stage(out, "bps", [&] { return build_bps(*out.b, g, alphabet, commands); });
  record_size(out, out.bps->automaton);
  out.bpns = run_stage(out, "bpns",
                       [&] { return build_bpns(*out.bps, build_ce(alphabet, options.max_controllable), cap); });
  record_size(out, out.bpns->automaton);
  out.bpns_a = run_stage(out, "bpns attacked", [&] { return attack_bpns(*out.bpns, alphabet); });
  record_size(out, out.bpns_a->automaton);

  const Automaton ce_a = build_ce_attacked(alphabet, options.max_controllable);
  out.attacker = run_stage(out, "attacker synthesis",
                           [&] { return synthesize_attacker(g, ce_a, *out.bpns_a, alphabet, cap).attacker; });
  record_size(out, *out.attacker);
  out.s0a = run_stage(out, "command pruning",
                      [&] { return prune_commands(g, ce_a, *out.bpns_a, *out.attacker, alphabet, commands, cap); });
  record_size(out, out.s0a->automaton);
  out.s0 = run_stage(out, "attack stripping", [&] { return strip_attack(*out.s0a, alphabet); });
  record_size(out, out.s0->automaton);
  out.refinement = run_stage(out, "refinement", [&] { return refine_commands(*out.s0, alphabet, cap); });
  record_size(out, out.refinement->fns().automaton);

  const BipartiteAutomaton& fns = out.refinement->fns();
  const bool exists = !fns.empty() && !fns.commands_at(*fns.automaton.initial()).empty();
  if (!exists) {
    out.decision = Decision::not_exists;
    out.total_millis = millis_since(start);
    return out;
  }

  out.decision = Decision::exists;
  out.fs_bipartite = run_stage(out, "extraction", [&] { return extract_deterministic(fns, options.pick); });
  out.fs = to_supervisor(*out.fs_bipartite, alphabet);
  record_size(out, *out.fs);
  run_stage(out, "verification", [&] {
    const auto resilient = check_resilient(g, *out.fs, alphabet, cap);
    if (!resilient.verdict) {
      throw InternalError("extracted supervisor is not resilient; witness " +
                          alphabet.word_to_string(*resilient.witness));
    }
    const auto equivalent = check_control_equivalence(g, s, *out.fs, alphabet, cap);
    if (!equivalent.verdict) {
      throw InternalError("extracted supervisor is not control equivalent; witness " +
                          alphabet.word_to_string(*equivalent.witness));
    }
    return true;
  });
  out.total_millis = millis_since(start);
  return out;
}

}  // namespace fortress
