#include "fortress/commands.hpp"

#include "fortress/errors.hpp"

namespace fortress {

std::vector<Symbol> enumerate_commands(const Alphabet& alphabet, std::size_t max_controllable) {
  const EventMask controllable = alphabet.controllable();
  const auto count = static_cast<std::size_t>(popcount(controllable));
  if (count > max_controllable) {
    throw SizeLimitError("command enumeration", max_controllable,
                         std::to_string(count) + " controllable events give 2^" + std::to_string(count) +
                             " control commands");
  }
  std::vector<Symbol> commands;
  commands.reserve(std::size_t{1} << count);
  // Walk the submasks of Σ_c in increasing numeric order.
  EventMask sub = 0;
  while (true) {
    commands.push_back(Symbol::command(alphabet.uncontrollable() | sub));
    if (sub == controllable) break;
    sub = (sub - controllable) & controllable;
  }
  return commands;
}

namespace {

Automaton ce_skeleton(const Alphabet& alphabet, std::size_t max_controllable, bool attacked) {
  const auto commands = enumerate_commands(alphabet, max_controllable);
  Automaton ce(alphabet.all_symbols());
  ce.reserve(commands.size() + 1);
  const StateId init = ce.add_state("init");
  ce.set_initial(init);
  for (Symbol gamma : commands) {
    const StateId q = ce.add_state("q" + alphabet.mask_name(gamma.members()));
    ce.add_transition(init, gamma, q);
    const EventMask enabled = attacked ? (gamma.members() | alphabet.attacker_controllable()) : gamma.members();
    for (std::size_t e = 0; e < alphabet.size(); ++e) {
      if ((enabled & bit(e)) == 0) continue;
      const bool observable = (alphabet.observable() & bit(e)) != 0;
      ce.add_transition(q, Symbol::event(e), observable ? init : q);
    }
  }
  return ce;
}

}  // namespace

Automaton build_ce(const Alphabet& alphabet, std::size_t max_controllable) {
  return ce_skeleton(alphabet, max_controllable, false);
}

Automaton build_ce_attacked(const Alphabet& alphabet, std::size_t max_controllable) {
  return ce_skeleton(alphabet, max_controllable, true);
}

}  // namespace fortress
