#include "mergeguard/interpreter.hpp"

namespace mergeguard {

Value eval(const Expr& e, const Valuation& sigma) {
  switch (e.kind) {
    case Expr::Kind::IntConst:
      return e.value;
    case Expr::Kind::Var:
      return sigma.get(e.name);
    case Expr::Kind::ArrayRead: {
      auto idx = eval(*e.args[0], sigma);
      if (!idx) return std::nullopt;
      return sigma.get(e.name, *idx);
    }
    case Expr::Kind::BinOp: {
      auto l = eval(*e.args[0], sigma);
      auto r = eval(*e.args[1], sigma);
      if (!l || !r) return std::nullopt;
      switch (e.op) {
        case ArithOp::Add: return BigInt(*l + *r);
        case ArithOp::Sub: return BigInt(*l - *r);
        case ArithOp::Mul: return BigInt(*l * *r);
      }
      return std::nullopt;
    }
    case Expr::Kind::Bottom:
    case Expr::Kind::Apply:
      return std::nullopt;
  }
  return std::nullopt;
}

bool eval(const Pred& p, const Valuation& sigma) {
  switch (p.kind) {
    case Pred::Kind::Bool:
      return p.value;
    case Pred::Kind::Not:
      return !eval(*p.args[0], sigma);
    case Pred::Kind::And:
      return eval(*p.args[0], sigma) && eval(*p.args[1], sigma);
    case Pred::Kind::Or:
      return eval(*p.args[0], sigma) || eval(*p.args[1], sigma);
    case Pred::Kind::Cmp: {
      auto l = eval(*p.lhs, sigma);
      auto r = eval(*p.rhs, sigma);
      if (!l && !r) return p.cmp == CmpOp::Eq;
      if (!l || !r) return false;
      switch (p.cmp) {
        case CmpOp::Eq: return *l == *r;
        case CmpOp::Ne: return *l != *r;
        case CmpOp::Lt: return *l < *r;
        case CmpOp::Le: return *l <= *r;
        case CmpOp::Gt: return *l > *r;
        case CmpOp::Ge: return *l >= *r;
      }
    }
  }
  return false;
}

namespace {

struct Machine {
  Valuation sigma;
  std::uint64_t fuel;
  std::uint64_t used = 0;

  // Returns false once fuel runs out.
  bool exec(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Skip:
      case Stmt::Kind::Hole:
        return true;
      case Stmt::Kind::Assign:
        sigma.set(s.target, eval(*s.rhs, sigma));
        return true;
      case Stmt::Kind::ArrayAssign: {
        auto idx = eval(*s.index, sigma);
        auto v = eval(*s.rhs, sigma);
        if (idx) sigma.set(s.target, *idx, v);
        return true;
      }
      case Stmt::Kind::Seq:
        return exec(*s.body[0]) && exec(*s.body[1]);
      case Stmt::Kind::If:
        return exec(*s.body[eval(*s.cond, sigma) ? 0 : 1]);
      case Stmt::Kind::While:
        while (eval(*s.cond, sigma)) {
          if (used >= fuel) return false;
          ++used;
          if (!exec(*s.body[0])) return false;
        }
        return true;
    }
    return true;
  }
};

}  // namespace

RunResult interpret(const Stmt& s, Valuation input, std::uint64_t fuel) {
  Machine m{std::move(input), fuel};
  if (!m.exec(s)) return FuelExhausted{fuel};
  return std::move(m.sigma);
}

}  // namespace mergeguard
