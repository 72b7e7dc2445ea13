#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fortress/symbol.hpp"

namespace fortress {

enum class Property { covert, damage_reachable, resilient, control_equivalent, well_formed };

std::string_view to_string(Property p);

/// Outcome of a check: verdict, an optional shortest witness over Σ ∪ Γ, the
/// artifacts examined, and (for well-formedness) every violation found.
struct VerificationReport {
  Property property = Property::well_formed;
  bool verdict = false;
  std::optional<std::vector<Symbol>> witness;
  std::vector<std::string> artifacts;
  std::vector<std::string> violations;
};

}  // namespace fortress
