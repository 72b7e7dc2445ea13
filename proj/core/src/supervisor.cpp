#include "fortress/supervisor.hpp"

#include <algorithm>
#include <charconv>
#include <random>

#include "fortress/errors.hpp"

namespace fortress {

std::string_view to_string(StateKind k) {
  switch (k) {
    case StateKind::control: return "control";
    case StateKind::reaction: return "reaction";
    case StateKind::detect: return "detect";
    case StateKind::dump: return "dump";
  }
  return "?";
}

std::optional<StateKind> parse_state_kind(std::string_view text) {
  for (auto k : {StateKind::control, StateKind::reaction, StateKind::detect, StateKind::dump}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::vector<StateId> BipartiteAutomaton::states_of(StateKind k) const {
  std::vector<StateId> out;
  for (StateId q = 0; q < kinds.size(); ++q) {
    if (kinds[q] == k) out.push_back(q);
  }
  return out;
}

std::vector<Symbol> BipartiteAutomaton::commands_at(StateId q) const {
  std::vector<Symbol> out;
  for (const auto& t : automaton.transitions(q)) {
    if (t.symbol.is_command()) out.push_back(t.symbol);
  }
  return out;
}

namespace {

std::vector<std::uint8_t> reachable_mask(const Automaton& a) {
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  if (!a.initial()) return seen;
  std::vector<StateId> stack{*a.initial()};
  seen[*a.initial()] = 1;
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (const auto& t : a.transitions(q)) {
      if (!seen[t.target]) {
        seen[t.target] = 1;
        stack.push_back(t.target);
      }
    }
  }
  return seen;
}

// Appends the detect state and the attack arcs at every reaction state.
BipartiteAutomaton augment_under_attack(const BipartiteAutomaton& b, const Alphabet& alphabet) {
  BipartiteAutomaton out = b;
  Automaton& a = out.automaton;
  a.set_alphabet(alphabet.all_symbols());
  if (a.empty()) return out;
  const StateId detect = a.add_state("detect");
  out.kinds.push_back(StateKind::detect);
  const EventMask stealthy = alphabet.attacker_controllable() & alphabet.unobservable();
  for (StateId q = 0; q < detect; ++q) {
    if (out.kinds[q] != StateKind::reaction) continue;
    const EventMask defined = a.enabled_events(q);
    for (std::size_t e = 0; e < alphabet.size(); ++e) {
      if (defined & bit(e)) continue;
      if (stealthy & bit(e)) {
        a.add_transition(q, Symbol::event(e), q);
      } else if (alphabet.observable() & bit(e)) {
        a.add_transition(q, Symbol::event(e), detect);
      }
    }
  }
  return out;
}

}  // namespace

BipartiteAutomaton accessible(const BipartiteAutomaton& b) {
  const auto keep = reachable_mask(b.automaton);
  BipartiteAutomaton out{Automaton(b.automaton.alphabet()), {}};
  if (!b.automaton.initial()) return out;
  const Automaton& a = b.automaton;
  std::vector<StateId> renumber(a.state_count(), 0);
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (!keep[q]) continue;
    renumber[q] = out.automaton.add_state(a.label(q), a.is_marked(q));
    out.kinds.push_back(b.kinds[q]);
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (!keep[q]) continue;
    for (const auto& t : a.transitions(q)) out.automaton.add_transition(renumber[q], t.symbol, renumber[t.target]);
  }
  out.automaton.set_initial(renumber[*a.initial()]);
  return out;
}

BipartiteAutomaton compose_bipartite(const BipartiteAutomaton& b, const Automaton& other, std::size_t max_states) {
  auto product = compose_tracked(b.automaton, other, max_states);
  BipartiteAutomaton out{std::move(product.automaton), {}};
  out.kinds.reserve(product.origin.size());
  for (const auto& o : product.origin) out.kinds.push_back(b.kinds[o[0]]);
  return out;
}

VerificationReport validate_supervisor(const Automaton& s, const Alphabet& alphabet) {
  VerificationReport report;
  report.property = Property::well_formed;
  if (s.alphabet().commands || !subset_of(s.alphabet().events, alphabet.all())) {
    report.violations.push_back("supervisor alphabet must be a subset of the plant events");
  }
  if (!s.initial()) report.violations.push_back("supervisor has no initial state");
  for (StateId q = 0; q < s.state_count(); ++q) {
    const EventMask missing = alphabet.uncontrollable() & ~s.enabled_events(q);
    if (missing != 0) {
      report.violations.push_back("state " + s.label(q) + " disables uncontrollable " + alphabet.mask_name(missing));
    }
    for (const auto& t : s.transitions(q)) {
      if (t.symbol.is_event() && (alphabet.unobservable() & bit(t.symbol.event_index())) && t.target != q) {
        report.violations.push_back("state " + s.label(q) + ": unobservable " + alphabet.symbol_name(t.symbol) +
                                    " is not a self-loop");
      }
    }
  }
  report.verdict = report.violations.empty();
  return report;
}

VerificationReport validate_bipartite(const BipartiteAutomaton& b, const Alphabet& alphabet) {
  VerificationReport report;
  report.property = Property::well_formed;
  const Automaton& a = b.automaton;
  if (b.kinds.size() != a.state_count()) {
    report.violations.push_back("kind table size does not match the state count");
    return report;
  }
  if (a.initial() && b.kinds[*a.initial()] != StateKind::control) {
    report.violations.push_back("initial state is not a control state");
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    const std::string where = "state " + a.label(q) + ": ";
    for (const auto& t : a.transitions(q)) {
      const std::string sym = alphabet.symbol_name(t.symbol);
      const StateKind to = b.kinds[t.target];
      switch (b.kinds[q]) {
        case StateKind::control:
          if (t.symbol.is_event()) {
            report.violations.push_back(where + "event " + sym + " at a control state");
          } else if (to != StateKind::reaction && to != StateKind::dump) {
            report.violations.push_back(where + "command " + sym + " does not lead to a reaction state");
          }
          break;
        case StateKind::reaction:
          if (t.symbol.is_command()) {
            report.violations.push_back(where + "command " + sym + " at a reaction state");
          } else if (alphabet.unobservable() & bit(t.symbol.event_index())) {
            if (t.target != q) report.violations.push_back(where + "unobservable " + sym + " is not a self-loop");
          } else if (to == StateKind::reaction) {
            report.violations.push_back(where + "observation " + sym + " leads to a reaction state");
          }
          break;
        case StateKind::detect:
          report.violations.push_back(where + "detect state has outgoing arcs");
          break;
        case StateKind::dump:
          break;
      }
    }
  }
  report.verdict = report.violations.empty();
  return report;
}

BipartiteAutomaton bipartize(const Automaton& s, const Alphabet& alphabet) {
  BipartiteAutomaton out{Automaton(alphabet.all_symbols()), {}};
  if (!s.initial()) return out;
  Automaton& a = out.automaton;
  a.reserve(2 * s.state_count());
  for (StateId q = 0; q < s.state_count(); ++q) {
    a.add_state(s.label(q) + "^com");
    a.add_state(s.label(q));
    out.kinds.push_back(StateKind::control);
    out.kinds.push_back(StateKind::reaction);
  }
  for (StateId q = 0; q < s.state_count(); ++q) {
    const StateId control = 2 * q;
    const StateId reaction = 2 * q + 1;
    a.add_transition(control, Symbol::command(s.enabled_events(q)), reaction);
    for (const auto& t : s.transitions(q)) {
      if (!t.symbol.is_event()) continue;
      const bool observable = alphabet.observable() & bit(t.symbol.event_index());
      a.add_transition(reaction, t.symbol, observable ? 2 * t.target : reaction);
    }
  }
  a.set_initial(2 * *s.initial());
  return out;
}

BipartiteAutomaton attack_bipartize(const BipartiteAutomaton& bt, const Alphabet& alphabet) {
  return augment_under_attack(bt, alphabet);
}

ClosedLoopObserver observe_closed_loop(const Automaton& g, const Automaton& s, const Alphabet& alphabet,
                                       std::size_t max_states) {
  const auto product = compose_tracked(g, s, max_states);
  auto subsets = subset_construct_detailed(product.automaton, SymbolSet::of_events(alphabet.observable()), max_states);
  ClosedLoopObserver out{std::move(subsets.automaton), {}};
  out.members.reserve(subsets.members.size());
  for (const auto& set : subsets.members) {
    auto& pairs = out.members.emplace_back();
    for (StateId q : set) pairs.push_back(product.origin[q]);
  }
  return out;
}

BipartiteAutomaton build_bps(const ClosedLoopObserver& b, const Automaton& g, const Alphabet& alphabet,
                             std::span<const Symbol> commands) {
  const Automaton& obs = b.automaton;
  BipartiteAutomaton out{Automaton(alphabet.all_symbols()), {}};
  if (!obs.initial()) return out;
  Automaton& a = out.automaton;
  const std::size_t n = obs.state_count();
  a.reserve(2 * n + 1);
  for (StateId q = 0; q < n; ++q) {
    a.add_state(obs.label(q) + "^com");
    a.add_state(obs.label(q));
    out.kinds.push_back(StateKind::control);
    out.kinds.push_back(StateKind::reaction);
  }
  const StateId dump = a.add_state("dump");
  out.kinds.push_back(StateKind::dump);

  for (StateId q = 0; q < n; ++q) {
    const EventMask en_b = obs.enabled_events(q);
    EventMask plant_en = 0;
    for (const auto& pair : b.members[q]) plant_en |= g.enabled_events(pair[0]);
    for (Symbol gamma : commands) {
      const EventMask members = gamma.members();
      if (subset_of(en_b, members) && subset_of(plant_en & members, en_b)) {
        a.add_transition(2 * q, gamma, 2 * q + 1);
      }
    }
    for (std::size_t e = 0; e < alphabet.size(); ++e) {
      const Symbol sigma = Symbol::event(e);
      const bool observable = alphabet.observable() & bit(e);
      StateId to = 2 * q + 1;
      if (observable) {
        const auto next = obs.successor(q, sigma);
        to = next ? 2 * *next : dump;
      }
      a.add_transition(2 * q + 1, sigma, to);
    }
  }
  for (std::size_t e = 0; e < alphabet.size(); ++e) a.add_transition(dump, Symbol::event(e), dump);
  for (Symbol gamma : commands) a.add_transition(dump, gamma, dump);
  a.set_initial(2 * *obs.initial());
  return out;
}

BipartiteAutomaton build_bpns(const BipartiteAutomaton& bps, const Automaton& ce, std::size_t max_states) {
  auto product = compose_tracked(bps.automaton, ce, max_states);
  BipartiteAutomaton out{std::move(product.automaton), {}};
  out.kinds.reserve(product.origin.size());
  for (const auto& o : product.origin) {
    out.kinds.push_back(o[1] == *ce.initial() ? StateKind::control : StateKind::reaction);
  }
  return out;
}

BipartiteAutomaton attack_bpns(const BipartiteAutomaton& bpns, const Alphabet& alphabet) {
  return augment_under_attack(bpns, alphabet);
}

BipartiteAutomaton strip_attack(const BipartiteAutomaton& s0a, const Alphabet& alphabet) {
  const Automaton& in = s0a.automaton;
  BipartiteAutomaton out{Automaton(alphabet.all_symbols()), s0a.kinds};
  if (!in.initial()) return out;
  Automaton& a = out.automaton;
  for (StateId q = 0; q < in.state_count(); ++q) a.add_state(in.label(q), in.is_marked(q));
  for (StateId q = 0; q < in.state_count(); ++q) {
    for (const auto& t : in.transitions(q)) {
      if (!t.symbol.is_command()) continue;
      a.add_transition(q, t.symbol, t.target);
      const StateId r = t.target;
      const EventMask members = t.symbol.members();
      for (std::size_t e = 0; e < alphabet.size(); ++e) {
        if ((members & bit(e)) == 0) continue;
        const Symbol sigma = Symbol::event(e);
        if (alphabet.unobservable() & bit(e)) {
          a.add_transition(r, sigma, r);
        } else if (auto next = in.successor(r, sigma)) {
          a.add_transition(r, sigma, *next);
        }
      }
    }
  }
  a.set_initial(*in.initial());
  return accessible(out);
}

std::string PickPolicy::to_string() const {
  if (kind == Kind::lex_min) return "lex-min";
  return "random:" + std::to_string(seed);
}

std::optional<PickPolicy> PickPolicy::parse(std::string_view text) {
  if (text == "lex-min") return lex_min();
  constexpr std::string_view prefix = "random:";
  if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto digits = text.substr(prefix.size());
  std::uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
  if (ec != std::errc{} || end != digits.data() + digits.size() || digits.empty()) return std::nullopt;
  return random(seed);
}

namespace {

// One command per control state, drawn in state-index order so that a seed
// always yields the same choices.
BipartiteAutomaton resolve_commands(const BipartiteAutomaton& b, const PickPolicy& policy) {
  const Automaton& in = b.automaton;
  BipartiteAutomaton out{Automaton(in.alphabet()), b.kinds};
  if (!in.initial()) return out;
  Automaton& a = out.automaton;
  for (StateId q = 0; q < in.state_count(); ++q) a.add_state(in.label(q), in.is_marked(q));
  std::mt19937_64 rng(policy.seed);
  for (StateId q = 0; q < in.state_count(); ++q) {
    if (b.kinds[q] == StateKind::control) {
      const auto commands = b.commands_at(q);
      if (commands.empty()) continue;
      std::size_t pick = 0;
      if (policy.kind == PickPolicy::Kind::seeded_random) {
        pick = std::uniform_int_distribution<std::size_t>(0, commands.size() - 1)(rng);
      }
      a.add_transition(q, commands[pick], *in.successor(q, commands[pick]));
    } else {
      for (const auto& t : in.transitions(q)) {
        if (t.symbol.is_event()) a.add_transition(q, t.symbol, t.target);
      }
    }
  }
  a.set_initial(*in.initial());
  auto trimmed = accessible(out);
  for (StateId q = 0; q < trimmed.state_count(); ++q) {
    if (trimmed.kinds[q] == StateKind::control && trimmed.commands_at(q).empty()) {
      throw ExtractionError("control state " + trimmed.automaton.label(q) + " has no command to pick");
    }
  }
  return trimmed;
}

}  // namespace

BipartiteAutomaton extract_deterministic(const BipartiteAutomaton& fns, const PickPolicy& policy) {
  return resolve_commands(fns, policy);
}

BipartiteAutomaton witness_supervisor(const BipartiteAutomaton& fns, std::span<const Symbol> t,
                                      const Alphabet& alphabet, std::span<const Symbol> commands,
                                      const PickPolicy& policy, std::size_t max_states) {
  if (!fns.automaton.accepts(t)) throw InputError("string is not in the language of the structure");
  const SymbolSet sigma_gamma = alphabet.all_symbols();

  Automaton chain(sigma_gamma);
  StateId last = chain.add_state("0");
  chain.set_initial(last);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const StateId next = chain.add_state(std::to_string(i + 1));
    chain.add_transition(last, t[i], next);
    last = next;
  }
  chain.set_marked(last);
  const SymbolSet observed = SymbolSet::with_commands(alphabet.observable());
  const Automaton pt = subset_construct(chain, observed, max_states);

  // Control after the start or an observation, reaction after a command.
  std::vector<StateKind> kind(pt.state_count(), StateKind::control);
  for (StateId q = 0; q < pt.state_count(); ++q) {
    for (const auto& tr : pt.transitions(q)) {
      if (tr.target == q) continue;
      kind[tr.target] = tr.symbol.is_command() ? StateKind::reaction : StateKind::control;
    }
  }

  Automaton nc(sigma_gamma);
  for (StateId q = 0; q < pt.state_count(); ++q) nc.add_state(pt.label(q));
  const StateId obs = nc.add_state("obs");
  std::vector<StateId> gamma_state;
  gamma_state.reserve(commands.size());
  for (Symbol gamma : commands) gamma_state.push_back(nc.add_state("q" + alphabet.mask_name(gamma.members())));
  for (StateId q = 0; q < pt.state_count(); ++q) {
    for (const auto& tr : pt.transitions(q)) nc.add_transition(q, tr.symbol, tr.target);
    if (kind[q] == StateKind::reaction) {
      for (std::size_t e = 0; e < alphabet.size(); ++e) {
        const Symbol sigma = Symbol::event(e);
        if (pt.defined(q, sigma)) continue;
        nc.add_transition(q, sigma, (alphabet.observable() & bit(e)) ? obs : q);
      }
    } else if (pt.transitions(q).empty()) {
      for (std::size_t i = 0; i < commands.size(); ++i) nc.add_transition(q, commands[i], gamma_state[i]);
    }
  }
  for (std::size_t i = 0; i < commands.size(); ++i) {
    nc.add_transition(obs, commands[i], gamma_state[i]);
    const EventMask members = commands[i].members();
    for (std::size_t e = 0; e < alphabet.size(); ++e) {
      if ((members & bit(e)) == 0) continue;
      nc.add_transition(gamma_state[i], Symbol::event(e), (alphabet.observable() & bit(e)) ? obs : gamma_state[i]);
    }
  }
  nc.set_initial(*pt.initial());

  const auto ncs = compose_bipartite(fns, nc, max_states);
  // Composition puts fns first; the structure's kinds are what matter here.
  return resolve_commands(ncs, policy);
}

Automaton to_supervisor(const BipartiteAutomaton& bt, const Alphabet& alphabet) {
  const Automaton& a = bt.automaton;
  Automaton s(alphabet.plant_symbols());
  if (!a.initial()) return s;
  auto single_command = [&](StateId control) {
    const auto commands = bt.commands_at(control);
    if (commands.size() != 1) {
      throw InputError("control state " + a.label(control) + " carries " + std::to_string(commands.size()) +
                       " commands; expected exactly one");
    }
    return *a.successor(control, commands.front());
  };

  std::vector<StateId> index(a.state_count(), UINT32_MAX);
  std::vector<StateId> order;
  auto intern = [&](StateId reaction) {
    if (index[reaction] == UINT32_MAX) {
      index[reaction] = s.add_state(a.label(reaction), a.is_marked(reaction));
      order.push_back(reaction);
    }
    return index[reaction];
  };
  s.set_initial(intern(single_command(*a.initial())));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const StateId r = order[i];
    for (const auto& t : a.transitions(r)) {
      if (!t.symbol.is_event()) continue;
      if (t.target == r) {
        s.add_transition(index[r], t.symbol, index[r]);
      } else if (bt.kinds[t.target] == StateKind::control) {
        s.add_transition(index[r], t.symbol, intern(single_command(t.target)));
      } else {
        throw InputError("reaction state " + a.label(r) + " leaves to a non-control state on " +
                         alphabet.symbol_name(t.symbol));
      }
    }
  }
  return s;
}

}  // namespace fortress
