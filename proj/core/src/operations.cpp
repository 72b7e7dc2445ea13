#include "fortress/operations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "fortress/errors.hpp"

namespace fortress {

namespace {

std::uint64_t pair_key(StateId a, StateId b) { return (std::uint64_t{a} << 32) | b; }

// Rebuilds `a` keeping only states with keep[q] != 0, in their original order.
Automaton filter_states(const Automaton& a, const std::vector<std::uint8_t>& keep) {
  Automaton out(a.alphabet());
  if (!a.initial() || !keep[*a.initial()]) return out;
  std::vector<StateId> renumber(a.state_count(), 0);
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (keep[q]) renumber[q] = out.add_state(a.label(q), a.is_marked(q));
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (!keep[q]) continue;
    for (const auto& t : a.transitions(q)) {
      if (keep[t.target]) out.add_transition(renumber[q], t.symbol, renumber[t.target]);
    }
  }
  out.set_initial(renumber[*a.initial()]);
  return out;
}

std::string set_label(const Automaton& a, const StateSet& set) {
  std::string label = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0) label += ',';
    label += a.label(set[i]);
  }
  label += '}';
  return label;
}

// Shared breadth-first search over product pairs, recording parents so that
// the first failing pair yields a shortest word.
struct PairSearch {
  std::vector<std::array<StateId, 2>> pairs;
  std::vector<std::size_t> parent;
  std::vector<Symbol> via;
  std::unordered_map<std::uint64_t, std::size_t> index;

  std::size_t visit(StateId a, StateId b, std::size_t from, Symbol s) {
    auto [it, inserted] = index.emplace(pair_key(a, b), pairs.size());
    if (inserted) {
      pairs.push_back({a, b});
      parent.push_back(from);
      via.push_back(s);
    }
    return it->second;
  }

  std::vector<Symbol> word_to(std::size_t node) const {
    std::vector<Symbol> word;
    while (node != 0) {
      word.push_back(via[node]);
      node = parent[node];
    }
    std::reverse(word.begin(), word.end());
    return word;
  }
};

}  // namespace

Automaton accessible(const Automaton& a) {
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  if (!a.initial()) return Automaton(a.alphabet());
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
  return filter_states(a, seen);
}

Product compose_tracked(const Automaton& a, const Automaton& b, std::size_t max_states) {
  Product product{Automaton(a.alphabet() | b.alphabet()), {}};
  if (!a.initial() || !b.initial()) return product;

  const bool a_marks = a.has_marked_states();
  const bool b_marks = b.has_marked_states();
  auto marked = [&](StateId qa, StateId qb) {
    if (a_marks && b_marks) return a.is_marked(qa) && b.is_marked(qb);
    if (a_marks) return a.is_marked(qa);
    if (b_marks) return b.is_marked(qb);
    return false;
  };

  Automaton& out = product.automaton;
  std::unordered_map<std::uint64_t, StateId> index;
  auto intern = [&](StateId qa, StateId qb) {
    auto [it, inserted] = index.emplace(pair_key(qa, qb), static_cast<StateId>(out.state_count()));
    if (inserted) {
      if (out.state_count() >= max_states) {
        throw SizeLimitError("composition", max_states, "parallel composition exceeds the state cap");
      }
      out.add_state("(" + a.label(qa) + "," + b.label(qb) + ")", marked(qa, qb));
      product.origin.push_back({qa, qb});
    }
    return it->second;
  };

  out.set_initial(intern(*a.initial(), *b.initial()));
  std::vector<std::pair<Symbol, std::array<StateId, 2>>> arcs;
  for (StateId q = 0; q < out.state_count(); ++q) {
    const auto [qa, qb] = product.origin[q];
    arcs.clear();
    for (const auto& t : a.transitions(qa)) {
      if (b.alphabet().contains(t.symbol)) {
        if (auto tb = b.successor(qb, t.symbol)) arcs.push_back({t.symbol, {t.target, *tb}});
      } else {
        arcs.push_back({t.symbol, {t.target, qb}});
      }
    }
    for (const auto& t : b.transitions(qb)) {
      if (!a.alphabet().contains(t.symbol)) arcs.push_back({t.symbol, {qa, t.target}});
    }
    std::sort(arcs.begin(), arcs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [symbol, target] : arcs) {
      const StateId to = intern(target[0], target[1]);
      out.add_transition(q, symbol, to);
    }
  }
  return product;
}

Automaton parallel_compose(const Automaton& a, const Automaton& b, std::size_t max_states) {
  return compose_tracked(a, b, max_states).automaton;
}

StateSet unobservable_reach(const Automaton& a, std::span<const StateId> from, const SymbolSet& observed) {
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  std::vector<StateId> stack;
  for (StateId q : from) {
    if (q >= a.state_count()) throw std::out_of_range("unknown state id " + std::to_string(q));
    if (!seen[q]) {
      seen[q] = 1;
      stack.push_back(q);
    }
  }
  StateSet reach;
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    reach.push_back(q);
    for (const auto& t : a.transitions(q)) {
      if (!observed.contains(t.symbol) && !seen[t.target]) {
        seen[t.target] = 1;
        stack.push_back(t.target);
      }
    }
  }
  std::sort(reach.begin(), reach.end());
  return reach;
}

StateSet unobservable_reach(const Automaton& a, StateId q, const SymbolSet& observed) {
  const StateId from[] = {q};
  return unobservable_reach(a, from, observed);
}

namespace {

// Common core of subset_construct and project.
SubsetConstruction determinize(const Automaton& a, const SymbolSet& observed, bool keep_unobserved_loops,
                               std::size_t max_states) {
  SubsetConstruction result;
  const SymbolSet alphabet = keep_unobserved_loops ? a.alphabet() : (a.alphabet() & observed);
  result.automaton = Automaton(alphabet);
  if (!a.initial()) return result;

  Automaton& out = result.automaton;
  std::map<StateSet, StateId> index;
  auto intern = [&](StateSet set) {
    auto it = index.find(set);
    if (it != index.end()) return it->second;
    if (out.state_count() >= max_states) {
      throw SizeLimitError("subset construction", max_states, "subset construction exceeds the state cap");
    }
    const bool marked = std::any_of(set.begin(), set.end(), [&](StateId q) { return a.is_marked(q); });
    const StateId id = out.add_state(set_label(a, set), marked);
    index.emplace(set, id);
    result.members.push_back(std::move(set));
    return id;
  };

  out.set_initial(intern(unobservable_reach(a, *a.initial(), observed)));
  std::map<Symbol, std::vector<StateId>> successors;
  for (StateId x = 0; x < out.state_count(); ++x) {
    successors.clear();
    for (StateId q : result.members[x]) {
      for (const auto& t : a.transitions(q)) successors[t.symbol].push_back(t.target);
    }
    for (auto& [symbol, targets] : successors) {
      if (observed.contains(symbol)) {
        const StateId to = intern(unobservable_reach(a, targets, observed));
        out.add_transition(x, symbol, to);
      } else if (keep_unobserved_loops) {
        out.add_transition(x, symbol, x);
      }
    }
  }
  return result;
}

}  // namespace

SubsetConstruction subset_construct_detailed(const Automaton& a, const SymbolSet& observed, std::size_t max_states) {
  return determinize(a, observed, true, max_states);
}

Automaton subset_construct(const Automaton& a, const SymbolSet& observed, std::size_t max_states) {
  return determinize(a, observed, true, max_states).automaton;
}

Automaton project(const Automaton& a, const SymbolSet& kept, std::size_t max_states) {
  return determinize(a, kept, false, max_states).automaton;
}

Automaton remove_states(const Automaton& a, std::span<const StateId> bad) {
  std::vector<std::uint8_t> keep(a.state_count(), 1);
  for (StateId q : bad) keep.at(q) = 0;
  return filter_states(a, keep);
}

LanguageCheck language_included(const Automaton& a, const Automaton& b) {
  if (!a.initial()) return {true, {}};
  if (!b.initial()) return {false, {}};
  PairSearch search;
  search.visit(*a.initial(), *b.initial(), 0, Symbol{});
  for (std::size_t node = 0; node < search.pairs.size(); ++node) {
    const auto [qa, qb] = search.pairs[node];
    for (const auto& t : a.transitions(qa)) {
      auto tb = b.successor(qb, t.symbol);
      if (!tb) {
        auto word = search.word_to(node);
        word.push_back(t.symbol);
        return {false, std::move(word)};
      }
      search.visit(t.target, *tb, node, t.symbol);
    }
  }
  return {true, {}};
}

LanguageCheck language_equal(const Automaton& a, const Automaton& b) {
  if (!a.initial() || !b.initial()) return {a.initial().has_value() == b.initial().has_value(), {}};
  PairSearch search;
  search.visit(*a.initial(), *b.initial(), 0, Symbol{});
  for (std::size_t node = 0; node < search.pairs.size(); ++node) {
    const auto [qa, qb] = search.pairs[node];
    const auto ta = a.transitions(qa);
    const auto tb = b.transitions(qb);
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
      if (j == tb.size() || (i < ta.size() && ta[i].symbol < tb[j].symbol)) {
        auto word = search.word_to(node);
        word.push_back(ta[i].symbol);
        return {false, std::move(word)};
      }
      if (i == ta.size() || tb[j].symbol < ta[i].symbol) {
        auto word = search.word_to(node);
        word.push_back(tb[j].symbol);
        return {false, std::move(word)};
      }
      search.visit(ta[i].target, tb[j].target, node, ta[i].symbol);
      ++i;
      ++j;
    }
  }
  return {true, {}};
}

std::optional<std::vector<Symbol>> shortest_word_to(const Automaton& a, std::span<const std::uint8_t> target) {
  if (!a.initial()) return std::nullopt;
  std::vector<std::size_t> parent(a.state_count(), SIZE_MAX);
  std::vector<Symbol> via(a.state_count());
  std::deque<StateId> queue{*a.initial()};
  parent[*a.initial()] = *a.initial();
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    if (target[q]) {
      std::vector<Symbol> word;
      for (StateId p = q; p != *a.initial(); p = static_cast<StateId>(parent[p])) word.push_back(via[p]);
      std::reverse(word.begin(), word.end());
      return word;
    }
    for (const auto& t : a.transitions(q)) {
      if (parent[t.target] == SIZE_MAX) {
        parent[t.target] = q;
        via[t.target] = t.symbol;
        queue.push_back(t.target);
      }
    }
  }
  return std::nullopt;
}

LanguageCheck marker_reachable(const Automaton& a) {
  std::vector<std::uint8_t> target(a.state_count(), 0);
  for (StateId q = 0; q < a.state_count(); ++q) target[q] = a.is_marked(q) ? 1 : 0;
  if (auto word = shortest_word_to(a, target)) return {true, std::move(*word)};
  return {false, {}};
}

}  // namespace fortress
