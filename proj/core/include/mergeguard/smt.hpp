#pragma once

#include "mergeguard/ast.hpp"
#include "mergeguard/formula.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mergeguard {

/// Declarations and one assert for `formula`. Deterministic.
std::string emit_smtlib(const Formula& formula);

/// Complete script checking satisfiability of `hyps && !conclusion`.
std::string emit_query(const std::vector<Formula>& hyps, const Formula& conclusion);

/// Weakest logic that admits the given assertions.
std::string logic_for(const std::vector<Formula>& assertions);

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Model {
  std::map<std::string, BigInt> values;                        // Int and Bool constants
  std::map<std::string, std::map<BigInt, BigInt>> arrays;      // sampled array constants
};

struct SolverAnswer {
  enum class Kind { Valid, Invalid, Unknown };
  Kind kind = Kind::Unknown;
  Model model;
  std::vector<BigInt> probe_values;  // aligned with Probes::terms (booleans as 0/1)
  std::string reason;

  bool valid() const { return kind == Kind::Valid; }
  bool invalid() const { return kind == Kind::Invalid; }
};

/// Extra values to read from a countermodel.
struct Probes {
  std::vector<TermPtr> terms;
  /// (array constant, index term) pairs sampled into Model::arrays.
  std::vector<std::pair<TermPtr, TermPtr>> array_reads;
  /// Read every free constant of the query into Model::values.
  bool full_model = true;
};

struct SolverConfig {
  std::string binary;  // empty: $MERGEGUARD_SOLVER, then `z3` on PATH
  std::chrono::milliseconds timeout{10000};
  /// Drop hypotheses that share no constants with the conclusion.
  bool slice = true;
};

struct SolverStats {
  std::size_t queries = 0;
  std::size_t valid = 0;
  std::size_t invalid = 0;
  std::size_t unknown = 0;
  double seconds = 0;
};

std::string resolve_solver_binary(const std::string& configured);

/// A solver child process speaking SMT-LIB v2 over pipes. Not thread-safe.
class SolverSession {
 public:
  explicit SolverSession(SolverConfig config = {});
  ~SolverSession();
  SolverSession(const SolverSession&) = delete;
  SolverSession& operator=(const SolverSession&) = delete;

  /// Checks `hyps |= conclusion` in a fresh frame.
  /// A universally quantified conclusion is skolemized, so the negated
  /// query stays quantifier-free and the model names the witness index.
  SolverAnswer check_entailment(const std::vector<Formula>& hyps, const Formula& conclusion,
                                const Probes& probes = {});

  SolverAnswer check_entailment(const Formula& hyp, const Formula& conclusion) {
    return check_entailment(std::vector<Formula>{hyp}, conclusion);
  }

  /// Raw command round trip, for diagnostics and self-tests.
  std::string version();
  int frame_depth() const { return depth_; }
  const SolverStats& stats() const { return stats_; }
  const SolverConfig& config() const { return config_; }

  /// Name of the skolem constant for the quantified index of the last query.
  const std::string& last_skolem() const { return last_skolem_; }

 private:
  struct Process;
  SolverConfig config_;
  std::unique_ptr<Process> proc_;
  std::string logic_;
  int depth_ = 0;
  int skolem_counter_ = 0;
  std::string last_skolem_;
  SolverStats stats_;

  void ensure_started();
  void restart();
  void send(const std::string& text);
  std::string read_response(std::chrono::steady_clock::time_point deadline);
  void set_logic(const std::string& logic);
};

/// Builds a program state from a countermodel. `inputs` maps source
/// variables to their kind; their initial symbols are `name@0`.
/// Unassigned scalars default to 0; arrays hold only sampled entries.
Valuation concretize(const Model& model, const std::map<std::string, VarKind>& inputs);

/// Name of the shared initial symbol of source variable `name`.
std::string initial_symbol(std::string_view name);

}  // namespace mergeguard
