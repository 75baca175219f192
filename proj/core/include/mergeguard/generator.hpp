#pragma once

#include "mergeguard/ast.hpp"
#include "mergeguard/oracle.hpp"

#include <random>
#include <string>
#include <vector>

namespace mergeguard {

struct GenOptions {
  std::vector<std::string> scalars{"x", "y", "z", "w"};
  std::vector<std::string> arrays;  // besides `out`
  int max_depth = 2;
  int max_block = 4;
  int max_const = 3;
  bool loops = true;
  /// Loop counters are private names that bodies never assign.
  std::string counter_prefix = "i";
};

/// Random terminating program: loops are counted `while (i < k)` with k <= 3.
StmtPtr gen_program(std::mt19937_64& rng, const GenOptions& options);

/// Random change to one statement of `s`: insertion, deletion, replacement,
/// branch swap, predicate negation, duplication or constant tweak.
StmtPtr mutate(std::mt19937_64& rng, const StmtPtr& s, const GenOptions& options);

/// Base, two mutated variants, and a merge built hole by hole from the
/// three-way diff: the changed side wins, and where both changed the
/// merge takes one side, the other, or both in sequence.
Scenario gen_scenario(std::mt19937_64& rng, const GenOptions& options);

}  // namespace mergeguard
