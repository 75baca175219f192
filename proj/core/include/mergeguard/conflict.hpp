#pragma once

#include "mergeguard/value.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mergeguard {

/// Final states of the base, variant A, variant B and merge, in that order.
using FinalStates = std::array<const Valuation*, 4>;

struct CfViolation {
  std::string var;
  BigInt index;
  std::array<Value, 4> values;  // base, A, B, merge
  std::string clause;
};

struct CfCheckOptions {
  /// Extra variables checked with the per-variable condition.
  std::vector<std::string> check_vars;
  /// Check `out` with the global form (all chi1 and all chi2) or all chi3,
  /// instead of the per-index conjunction.
  bool global_otherwise = false;
};

/// Per-index conflict-freedom on `out`:
///   (o1 != o2 -> o4 == o2) && (o1 != o3 -> o4 == o3) && (o1 == o2 == o3 -> o4 == o1)
/// Values compare as values; bottom equals only bottom.
std::optional<CfViolation> find_cf_violation(const FinalStates& finals,
                                             const CfCheckOptions& options = {});

std::string to_string(const CfViolation& v);

}  // namespace mergeguard
