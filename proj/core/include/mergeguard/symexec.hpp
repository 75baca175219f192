#pragma once

#include "mergeguard/analysis.hpp"
#include "mergeguard/ast.hpp"
#include "mergeguard/formula.hpp"
#include "mergeguard/product.hpp"
#include "mergeguard/smt.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mergeguard {

/// Symbolic state: current term of every (renamed) identifier plus the
/// path constraint as a list of conjuncts. Identifiers not yet in `env`
/// denote their shared initial symbol `base@0`.
struct SymState {
  std::map<std::string, TermPtr> env;
  std::vector<Formula> facts;
  /// Value numbering: rendered term -> symbol already bound to it on this path.
  std::map<std::string, TermPtr> memo;
};

/// Equality between two identifiers, e.g. x#1 = x#3.
struct Equality {
  std::string lhs;
  std::string rhs;
  friend bool operator==(const Equality&, const Equality&) = default;
  friend auto operator<=>(const Equality&, const Equality&) = default;
};

std::string to_string(const Equality& e);

struct LoopInvariant {
  std::string loop;                  // rendered loop head
  std::vector<Equality> conjuncts;
};

struct LoopSpec {
  std::vector<std::string> havoc;     // identifiers modified by the loop
  std::vector<Equality> candidates;
  /// Analyzes one iteration starting from `entry` (guards already assumed).
  std::function<SymState(SymState entry)> body;
  /// Guard terms of every version in a given state.
  std::function<std::vector<TermPtr>(const SymState&)> guards;
};

/// Strongest-postcondition engine over SSA terms.
class SymEngine {
 public:
  SymEngine(SolverSession& solver, std::map<std::string, VarKind> kinds, int versions);

  SolverSession& solver() { return solver_; }
  int versions() const { return versions_; }
  UfRegistry& registry() { return registry_; }
  ProductOptions& product_options() { return product_options_; }

  void learn_kinds(const Stmt& s);
  Sort sort_of(const std::string& id) const;

  TermPtr lookup(const SymState& st, const std::string& id) const;
  TermPtr fresh(const std::string& id, Sort sort);

  TermPtr eval(const Expr& e, const SymState& st);
  TermPtr eval(const Pred& p, const SymState& st);

  /// Binds `id` to `value` through a fresh symbol (or a memoized one).
  void bind(SymState& st, const std::string& id, const TermPtr& value);

  void post(const Stmt& s, SymState& st);

  /// Joins two branch states that extend `base_facts` conjuncts of a common prefix.
  SymState merge(const SymState& then_st, const SymState& else_st, std::size_t base_facts);

  /// Keeps the candidates valid under `st`, dropping counterexamples until
  /// the remaining conjunction is entailed.
  std::vector<Equality> filter_valid(const SymState& st, std::vector<Equality> candidates);

  struct LoopHead {
    SymState state;                 // havocked state with the invariant assumed
    std::vector<Equality> invariant;
  };

  /// Houdini fixpoint for a loop starting in `pre`: havocs the modified
  /// identifiers and keeps the candidates that hold initially and are
  /// preserved by one guarded iteration.
  LoopHead houdini(const SymState& pre, const LoopSpec& spec);

  /// Loop exit: the head state with every guard negated.
  SymState exit_loop(LoopHead head, const LoopSpec& spec);

  TermPtr equality_term(const SymState& st, const Equality& e) const;

  const std::vector<LoopInvariant>& invariants() const { return invariants_; }
  void record_invariant(const std::string& label, const std::vector<Equality>& inv);

  /// Candidate equalities over every version pair for the given base names.
  std::vector<Equality> pairwise_candidates(const std::set<std::string>& bases) const;

 private:
  SolverSession& solver_;
  std::map<std::string, VarKind> kinds_;
  int versions_;
  std::map<std::string, int> generation_;
  int bottom_count_ = 0;
  UfRegistry registry_;
  ProductOptions product_options_;
  std::vector<LoopInvariant> invariants_;
  std::map<std::string, std::size_t> invariant_index_;
  /// Facts `fresh = term` made by bind. They hold on every path, so merge
  /// hoists them out of the branch disjunction.
  std::set<const Term*> definitions_;
  /// Every definition made so far, by rendered value. A state that lacks
  /// one gets the defining fact again when it reuses the symbol.
  std::map<std::string, std::pair<TermPtr, Formula>> numbering_;

  /// Symbol for `value`, shared with any earlier definition of it.
  TermPtr define(SymState& st, const std::string& id, const TermPtr& value);
};

}  // namespace mergeguard
