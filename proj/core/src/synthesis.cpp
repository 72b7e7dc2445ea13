#include "fortress/synthesis.hpp"

#include <algorithm>
#include <unordered_map>

#include "fortress/errors.hpp"

namespace fortress {

namespace {

std::uint64_t pair_key(StateId a, StateId b) { return (std::uint64_t{a} << 32) | b; }

// Plant runs tracked against the legal automaton. State 0 is the sink for
// strings that leave L(legal).
Automaton legality_product(const Automaton& plant, const Automaton& legal, std::size_t max_states) {
  Automaton w(plant.alphabet());
  w.add_state("bad");
  std::vector<std::array<StateId, 2>> origin{{0, 0}};
  std::unordered_map<std::uint64_t, StateId> index;
  auto intern = [&](StateId p, StateId l) {
    auto [it, inserted] = index.emplace(pair_key(p, l), static_cast<StateId>(w.state_count()));
    if (inserted) {
      if (w.state_count() >= max_states) {
        throw SizeLimitError("synthesis", max_states, "plant/specification product exceeds the state cap");
      }
      w.add_state(std::to_string(p) + "," + std::to_string(l));
      origin.push_back({p, l});
    }
    return it->second;
  };
  w.set_initial(intern(*plant.initial(), *legal.initial()));
  for (StateId x = 1; x < w.state_count(); ++x) {
    const auto [p, l] = origin[x];
    for (const auto& t : plant.transitions(p)) {
      StateId to = 0;
      if (!legal.alphabet().contains(t.symbol)) {
        to = intern(t.target, l);
      } else if (auto next = legal.successor(l, t.symbol)) {
        to = intern(t.target, *next);
      }
      w.add_transition(x, t.symbol, to);
    }
  }
  return w;
}

}  // namespace

Automaton supcn_synthesize(const Automaton& plant, const Automaton& legal, const ControlConstraint& cc,
                           std::size_t max_states) {
  if (!cc.controllable.subset_of(cc.observable)) {
    throw InputError("control constraint: controllable symbols must be observable");
  }
  Automaton r(plant.alphabet());
  if (!plant.initial() || !legal.initial()) return r;

  const Automaton w = legality_product(plant, legal, max_states);
  const auto estimates = subset_construct_detailed(w, cc.observable, max_states);
  const Automaton& obs = estimates.automaton;
  const std::size_t n = obs.state_count();

  // An estimate loses if it may already be illegal or an uncontrollable
  // observation can force it into a losing estimate.
  std::vector<std::uint8_t> losing(n, 0);
  std::vector<std::vector<StateId>> forced_into(n);
  std::vector<StateId> work;
  for (StateId x = 0; x < n; ++x) {
    if (estimates.members[x].front() == 0) {
      losing[x] = 1;
      work.push_back(x);
    }
    for (const auto& t : obs.transitions(x)) {
      if (t.target != x && !cc.controllable.contains(t.symbol)) forced_into[t.target].push_back(x);
    }
  }
  while (!work.empty()) {
    const StateId y = work.back();
    work.pop_back();
    for (StateId x : forced_into[y]) {
      if (!losing[x]) {
        losing[x] = 1;
        work.push_back(x);
      }
    }
  }
  if (losing[*obs.initial()]) return r;

  std::vector<StateId> index(n, UINT32_MAX);
  std::vector<StateId> order{*obs.initial()};
  index[*obs.initial()] = r.add_state("r0");
  r.set_initial(0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const StateId x = order[i];
    for (const auto& t : obs.transitions(x)) {
      if (losing[t.target]) continue;
      if (index[t.target] == UINT32_MAX) {
        index[t.target] = r.add_state("r" + std::to_string(r.state_count()));
        order.push_back(t.target);
      }
      r.add_transition(index[x], t.symbol, index[t.target]);
    }
  }
  return r;
}

AttackArena build_attack_arena(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& target_a,
                               std::size_t max_states) {
  const auto gc = compose_tracked(g, ce_a, max_states);
  auto p = compose_tracked(gc.automaton, target_a.automaton, max_states);
  AttackArena arena{std::move(p.automaton), {}};
  arena.structure_state.reserve(p.origin.size());
  for (const auto& o : p.origin) arena.structure_state.push_back(o[1]);
  return arena;
}

AttackerSynthesis synthesize_attacker(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& target_a,
                                      const Alphabet& alphabet, std::size_t max_states) {
  AttackerSynthesis out{build_attack_arena(g, ce_a, target_a, max_states), {}};
  std::vector<StateId> bad;
  for (StateId q = 0; q < out.arena.automaton.state_count(); ++q) {
    if (target_a.kinds[out.arena.structure_state[q]] == StateKind::detect) bad.push_back(q);
  }
  const Automaton legal = remove_states(out.arena.automaton, bad);
  const ControlConstraint cc{SymbolSet::of_events(alphabet.attacker_controllable()),
                             SymbolSet::with_commands(alphabet.attacker_observable())};
  out.attacker = supcn_synthesize(out.arena.automaton, legal, cc, max_states);
  return out;
}

BipartiteAutomaton prune_commands(const Automaton& g, const Automaton& ce_a, const BipartiteAutomaton& bpns_a,
                                  const Automaton& attacker, const Alphabet& alphabet,
                                  std::span<const Symbol> commands, std::size_t max_states) {
  const AttackArena arena = build_attack_arena(g, ce_a, bpns_a, max_states);
  const Automaton p = parallel_compose(arena.automaton, attacker, max_states);

  // Damage states go; every other gap is completed toward a sink, so only
  // strings reaching damage are illegal.
  Automaton legal(alphabet.all_symbols());
  std::vector<StateId> renumber(p.state_count(), UINT32_MAX);
  for (StateId q = 0; q < p.state_count(); ++q) {
    if (!p.is_marked(q)) renumber[q] = legal.add_state(std::to_string(q));
  }
  if (p.initial() && renumber[*p.initial()] != UINT32_MAX) {
    const StateId dump = legal.add_state("dump");
    for (StateId q = 0; q < p.state_count(); ++q) {
      if (renumber[q] == UINT32_MAX) continue;
      auto complete = [&](Symbol s) {
        if (auto next = p.successor(q, s)) {
          if (renumber[*next] != UINT32_MAX) legal.add_transition(renumber[q], s, renumber[*next]);
        } else {
          legal.add_transition(renumber[q], s, dump);
        }
      };
      for (std::size_t e = 0; e < alphabet.size(); ++e) complete(Symbol::event(e));
      for (Symbol gamma : commands) complete(gamma);
    }
    for (std::size_t e = 0; e < alphabet.size(); ++e) legal.add_transition(dump, Symbol::event(e), dump);
    for (Symbol gamma : commands) legal.add_transition(dump, gamma, dump);
    legal.set_initial(renumber[*p.initial()]);
  }

  const ControlConstraint cc{SymbolSet::with_commands(0), SymbolSet::with_commands(alphabet.observable())};
  const Automaton r = supcn_synthesize(bpns_a.automaton, legal, cc, max_states);
  return compose_bipartite(bpns_a, r, max_states);
}

Refinement refine_commands(const BipartiteAutomaton& s0, const Alphabet& alphabet, std::size_t max_states) {
  Refinement out;
  out.chain.push_back(s0);
  const ControlConstraint cc{SymbolSet::with_commands(0), SymbolSet::with_commands(alphabet.observable())};
  while (true) {
    const BipartiteAutomaton& current = out.chain.back();
    std::vector<StateId> del;
    for (StateId q = 0; q < current.state_count(); ++q) {
      if (current.kinds[q] == StateKind::control && current.commands_at(q).empty()) del.push_back(q);
    }
    if (del.empty()) break;
    // A command-less initial state leaves an empty legal language; that
    // problem has no solution, so FNS is empty and no removal round runs.
    if (std::find(del.begin(), del.end(), *current.automaton.initial()) != del.end()) {
      out.chain.push_back({Automaton(current.automaton.alphabet()), {}});
      break;
    }
    const Automaton legal = remove_states(current.automaton, del);
    const Automaton r = supcn_synthesize(current.automaton, legal, cc, max_states);
    BipartiteAutomaton next = accessible(compose_bipartite(current, r, max_states));
    out.chain.push_back(std::move(next));
    ++out.iterations;
  }
  return out;
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::exists: return "exists";
    case Decision::not_exists: return "not-exists";
    case Decision::already_resilient: return "already-resilient";
  }
  return "?";
}

}  // namespace fortress
