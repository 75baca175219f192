#pragma once

#include "mergeguard/conflict.hpp"
#include "mergeguard/ndiff.hpp"
#include "mergeguard/product.hpp"
#include "mergeguard/smt.hpp"
#include "mergeguard/symexec.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mergeguard {

enum class VerifyMode {
  Compositional,  // ndiff plus the six relational rules
  FullProduct,    // one product of the four whole programs
  NoDependence,   // compositional, but shared code goes through products too
};

std::string to_string(VerifyMode m);

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Compositional;
  CfCheckOptions cf;
  std::uint64_t replay_fuel = 10000;
  /// Loop unrolling depth of the bounded search for a concrete witness
  /// when the first model does not replay to a violation. 0 disables it.
  int witness_unroll = 3;
  ProductOptions product;
};

struct Diagnostics {
  std::vector<LoopInvariant> invariants;
  /// Rule that handled each hole of the shared program, in hole order.
  std::map<std::size_t, int> hole_rules;
  /// How often each rule fired, Houdini re-analyses included.
  std::map<int, std::size_t> rule_counts;
  std::size_t holes = 0;
  SolverStats solver;
  double rpc_seconds = 0;  // relational post, solver calls included
  double seconds = 0;
};

struct Verdict {
  enum class Kind { Verified, Conflict, Unknown };
  Kind kind = Kind::Unknown;
  bool confirmed = false;             // Conflict only
  std::optional<Valuation> witness;   // Conflict with a model
  std::optional<CfViolation> violation;
  std::array<std::optional<Valuation>, 4> finals;  // replayed final states
  std::string reason;
  Diagnostics diagnostics;
};

std::string to_string(Verdict::Kind k);

/// Per-variable conflict freedom over the four version terms:
///   all equal, or (v1 != v2 -> v2 == v4) && (v1 != v3 -> v3 == v4).
Formula cf_var(const std::array<TermPtr, 4>& v);

/// Per-index conflict-freedom condition on the four `out` arrays at index `k`.
Formula cf_out_at(const std::array<TermPtr, 4>& out, const TermPtr& k);

/// Conclusion checked after the relational post.
Formula conflict_freedom(const SymEngine& engine, const SymState& st, const VerifyOptions& options);

struct RelationalResult {
  SymState state;
  std::array<std::size_t, 4> consumed{};  // edit entries used per version
};

/// Relational strongest postcondition of `shared` under the four edits.
/// Throws ProductTooLarge when a product exceeds the node limit.
RelationalResult relational_post(SymEngine& engine, const StmtPtr& shared,
                                 const std::vector<Edit>& edits, SymState init,
                                 const VerifyOptions& options, Diagnostics* diag = nullptr);

/// Verifies a shared program with one edit per version (base, A, B, merge).
Verdict verify(const StmtPtr& shared, const std::vector<Edit>& edits, const VerifyOptions& options,
               SolverSession& solver);

/// Diffs the four programs (unless in full-product mode) and verifies them.
Verdict verify_programs(const std::array<StmtPtr, 4>& programs, const VerifyOptions& options,
                        SolverSession& solver);

}  // namespace mergeguard
