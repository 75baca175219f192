#pragma once

#include "mergeguard/value.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace mergeguard {

enum class Sort { Int, Bool, Array };

class Term;
using TermPtr = std::shared_ptr<const Term>;
using Formula = TermPtr;

/// First-order term over integers, integer arrays, booleans and
/// uninterpreted functions. Immutable and shared.
class Term {
 public:
  enum class Op {
    IntLit, BoolLit, Const,
    Add, Sub, Mul,
    Select, Store,
    Apply,
    Eq, Lt, Le, Gt, Ge,
    And, Or, Not, Implies, Ite,
    Forall,  // name = bound Int variable, args = {body}
    Bound,   // reference to the Forall variable `name`
  };

  Op op;
  Sort sort;
  BigInt int_value;
  bool bool_value = false;
  std::string name;  // Const, Apply (function symbol), Forall/Bound (variable)
  std::vector<TermPtr> args;

  Term(Op o, Sort s) : op(o), sort(s) {}
};

namespace term {

TermPtr int_lit(BigInt v);
TermPtr bool_lit(bool b);
TermPtr constant(std::string name, Sort sort);
TermPtr bound(std::string name);
TermPtr add(TermPtr a, TermPtr b);
TermPtr sub(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr select(TermPtr array, TermPtr index);
TermPtr store(TermPtr array, TermPtr index, TermPtr value);
TermPtr apply(std::string fn, std::vector<TermPtr> args, Sort result);
TermPtr eq(TermPtr a, TermPtr b);
TermPtr ne(TermPtr a, TermPtr b);
TermPtr lt(TermPtr a, TermPtr b);
TermPtr le(TermPtr a, TermPtr b);
TermPtr gt(TermPtr a, TermPtr b);
TermPtr ge(TermPtr a, TermPtr b);
TermPtr conj(std::vector<TermPtr> parts);
TermPtr disj(std::vector<TermPtr> parts);
TermPtr neg(TermPtr a);
TermPtr implies(TermPtr a, TermPtr b);
TermPtr iff(TermPtr a, TermPtr b);
TermPtr ite(TermPtr c, TermPtr t, TermPtr e);
TermPtr forall(std::string var, TermPtr body);

}  // namespace term

/// Syntactically identical terms.
bool trivially_equal(const TermPtr& a, const TermPtr& b);

struct FunctionDecl {
  std::vector<Sort> args;
  Sort result;
};

struct Signature {
  std::map<std::string, Sort> constants;
  std::map<std::string, FunctionDecl> functions;
};

void collect_signature(const TermPtr& t, Signature& sig);

/// Free constants of `t`, sorted by name.
std::set<std::string> free_constants(const TermPtr& t);

bool has_quantifier(const TermPtr& t);
bool is_nonlinear(const TermPtr& t);

/// Replaces the Bound variable `var` by `value`.
TermPtr substitute_bound(const TermPtr& t, const std::string& var, const TermPtr& value);

/// SMT-LIB rendering of a single term or sort.
std::string to_smtlib(const TermPtr& t);
std::string to_smtlib(Sort s);

/// Human-readable infix rendering for diagnostics.
std::string to_string(const TermPtr& t);

}  // namespace mergeguard
