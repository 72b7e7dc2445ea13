#pragma once

#include <cstddef>
#include <vector>

#include "fortress/alphabet.hpp"
#include "fortress/automaton.hpp"

namespace fortress {

inline constexpr std::size_t kDefaultMaxControllable = 16;

/// Γ: every event set containing all uncontrollable events, ordered by member
/// bitmask. Throws SizeLimitError when |Σ_c| exceeds `max_controllable`.
std::vector<Symbol> enumerate_commands(const Alphabet& alphabet,
                                       std::size_t max_controllable = kDefaultMaxControllable);

/// Command execution automaton: initial state `init` issues any command γ and
/// moves to `q{γ}`; there observable members return to `init` and
/// unobservable members loop.
Automaton build_ce(const Alphabet& alphabet, std::size_t max_controllable = kDefaultMaxControllable);

/// CE plus the actuator enablement arcs for attackable events missing from γ.
Automaton build_ce_attacked(const Alphabet& alphabet, std::size_t max_controllable = kDefaultMaxControllable);

}  // namespace fortress
