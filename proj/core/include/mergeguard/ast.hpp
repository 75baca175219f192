#pragma once

#include "mergeguard/value.hpp"

#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mergeguard {

class Expr;
class Pred;
class Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using PredPtr = std::shared_ptr<const Pred>;
using StmtPtr = std::shared_ptr<const Stmt>;

/// Identifier reserved for the output array.
inline constexpr std::string_view kOutVar = "out";

enum class ArithOp { Add, Sub, Mul };
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

/// Integer expression. Nodes are immutable and shared.
class Expr {
 public:
  enum class Kind {
    IntConst,
    Var,
    ArrayRead,
    BinOp,
    Bottom,
    Apply,  // uninterpreted function application, internal only
  };

  Kind kind;
  BigInt value;               // IntConst
  std::string name;           // Var, ArrayRead, Apply
  ArithOp op = ArithOp::Add;  // BinOp
  std::vector<ExprPtr> args;  // ArrayRead: {index}; BinOp: {lhs, rhs}; Apply

  Expr(Kind k) : kind(k) {}
};

class Pred {
 public:
  enum class Kind { Cmp, And, Or, Not, Bool };

  Kind kind;
  CmpOp cmp = CmpOp::Eq;       // Cmp
  ExprPtr lhs, rhs;            // Cmp
  std::vector<PredPtr> args;   // And, Or: {l, r}; Not: {p}
  bool value = false;          // Bool

  Pred(Kind k) : kind(k) {}
};

/// Statement, possibly containing holes.
class Stmt {
 public:
  enum class Kind { Skip, Assign, ArrayAssign, Seq, If, While, Hole };

  Kind kind;
  std::string target;          // Assign, ArrayAssign
  ExprPtr index;               // ArrayAssign
  ExprPtr rhs;                 // Assign, ArrayAssign
  PredPtr cond;                // If, While
  std::vector<StmtPtr> body;   // Seq: {first, second}; If: {then, else}; While: {body}

  Stmt(Kind k) : kind(k) {}
};

/// Raised when an edit list does not match the hole count of a program.
class EditArityMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builders.
ExprPtr int_const(BigInt v);
ExprPtr var(std::string name);
ExprPtr array_read(std::string array, ExprPtr index);
ExprPtr bin_op(ArithOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr bottom();
ExprPtr apply_fn(std::string fn, std::vector<ExprPtr> args);

PredPtr cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs);
PredPtr pred_and(PredPtr l, PredPtr r);
PredPtr pred_or(PredPtr l, PredPtr r);
PredPtr pred_not(PredPtr p);
PredPtr pred_bool(bool b);

StmtPtr skip();
StmtPtr assign(std::string var, ExprPtr rhs);
StmtPtr array_assign(std::string array, ExprPtr index, ExprPtr rhs);
StmtPtr seq(StmtPtr first, StmtPtr second);
StmtPtr seq(std::span<const StmtPtr> items);
StmtPtr if_stmt(PredPtr cond, StmtPtr then_branch, StmtPtr else_branch);
StmtPtr while_stmt(PredPtr cond, StmtPtr loop_body);
StmtPtr hole();

bool is_atom(const Stmt& s);

/// Number of holes in `s`, in depth-first order.
std::size_t num_holes(const Stmt& s);

/// Fills the holes of `h` left to right with `edit`.
/// Throws EditArityMismatch when `edit.size() != num_holes(h)`.
StmtPtr apply_edit(const StmtPtr& h, std::span<const StmtPtr> edit);

/// Top-level statements of `s` with nested sequences flattened and skips dropped.
std::vector<StmtPtr> flatten(const StmtPtr& s);

/// Structural equality of expressions and predicates.
bool expr_equal(const Expr& a, const Expr& b);
bool pred_equal(const Pred& a, const Pred& b);

/// Structural equality modulo sequence associativity and skip units.
bool stmt_equal(const StmtPtr& a, const StmtPtr& b);

/// Sequence normal form: right-nested, skip-free (or a single skip).
StmtPtr normalize(const StmtPtr& s);

std::size_t node_count(const Stmt& s);

// Variable collections. Apply function names are not variables.
void collect_vars(const Expr& e, std::set<std::string>& out);
void collect_vars(const Pred& p, std::set<std::string>& out);
void collect_vars(const Stmt& s, std::set<std::string>& out);
std::set<std::string> vars(const Stmt& s);

enum class VarKind { Scalar, Array };

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Infers scalar/array use for every variable; `out` is always an array.
/// Throws TypeError if a name is used both ways.
void infer_var_kinds(const Stmt& s, std::map<std::string, VarKind>& kinds);

}  // namespace mergeguard
