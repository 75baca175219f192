#pragma once

#include "mergeguard/ast.hpp"
#include "mergeguard/conflict.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mergeguard {

/// Four versions: base, variant A, variant B, merge.
struct Scenario {
  std::array<StmtPtr, 4> versions;
};

/// Finite input space for exhaustive checking.
struct EnumSpace {
  std::vector<std::string> scalars;
  std::vector<std::string> arrays;  // `out` excluded: it always starts empty
  std::vector<BigInt> domain{-2, -1, 0, 1, 2};
  BigInt window_lo = 0;
  BigInt window_hi = 3;
  std::uint64_t fuel = 10000;
  /// Above this many points, sample instead of enumerating.
  std::size_t max_points = 1000000;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;

  /// Every non-output variable of the scenario with default bounds.
  static EnumSpace for_scenario(const Scenario& s);

  /// Number of valuations in the space.
  BigInt size() const;
};

struct OracleResult {
  enum class Kind { NoViolation, Violation, Inconclusive };
  Kind kind = Kind::NoViolation;
  std::optional<Valuation> sigma;
  std::optional<CfViolation> violation;
  std::size_t explored = 0;
  std::size_t exhausted = 0;  // inputs on which some version ran out of fuel
  bool sampled = false;
};

std::string to_string(OracleResult::Kind k);

/// Checks conflict freedom on every valuation of the space (or a seeded
/// sample of it when it is too large). Stops at the first violation.
OracleResult brute_force_cf(const Scenario& scenario, const EnumSpace& space,
                            const CfCheckOptions& options = {});

/// Checks a single input.
OracleResult check_input(const Scenario& scenario, const Valuation& sigma, std::uint64_t fuel,
                         const CfCheckOptions& options = {});

}  // namespace mergeguard
