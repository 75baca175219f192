#include "mergeguard/formula.hpp"

#include <sstream>

namespace mergeguard {

namespace term {

namespace {

TermPtr make(Term::Op op, Sort sort, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>(op, sort);
  t->args = std::move(args);
  return t;
}

bool is_bool(const TermPtr& t, bool v) {
  return t->op == Term::Op::BoolLit && t->bool_value == v;
}

}  // namespace

TermPtr int_lit(BigInt v) {
  auto t = std::make_shared<Term>(Term::Op::IntLit, Sort::Int);
  t->int_value = std::move(v);
  return t;
}

TermPtr bool_lit(bool b) {
  static const TermPtr yes = [] {
    auto t = std::make_shared<Term>(Term::Op::BoolLit, Sort::Bool);
    t->bool_value = true;
    return t;
  }();
  static const TermPtr no = std::make_shared<Term>(Term::Op::BoolLit, Sort::Bool);
  return b ? yes : no;
}

TermPtr constant(std::string name, Sort sort) {
  auto t = std::make_shared<Term>(Term::Op::Const, sort);
  t->name = std::move(name);
  return t;
}

TermPtr bound(std::string name) {
  auto t = std::make_shared<Term>(Term::Op::Bound, Sort::Int);
  t->name = std::move(name);
  return t;
}

TermPtr add(TermPtr a, TermPtr b) { return make(Term::Op::Add, Sort::Int, {a, b}); }
TermPtr sub(TermPtr a, TermPtr b) { return make(Term::Op::Sub, Sort::Int, {a, b}); }
TermPtr mul(TermPtr a, TermPtr b) { return make(Term::Op::Mul, Sort::Int, {a, b}); }

TermPtr select(TermPtr array, TermPtr index) {
  return make(Term::Op::Select, Sort::Int, {array, index});
}

TermPtr store(TermPtr array, TermPtr index, TermPtr value) {
  return make(Term::Op::Store, Sort::Array, {array, index, value});
}

TermPtr apply(std::string fn, std::vector<TermPtr> args, Sort result) {
  auto t = make(Term::Op::Apply, result, std::move(args));
  std::const_pointer_cast<Term>(t)->name = std::move(fn);
  return t;
}

TermPtr eq(TermPtr a, TermPtr b) {
  if (trivially_equal(a, b)) return bool_lit(true);
  if (a->op == Term::Op::IntLit && b->op == Term::Op::IntLit)
    return bool_lit(a->int_value == b->int_value);
  return make(Term::Op::Eq, Sort::Bool, {a, b});
}

TermPtr ne(TermPtr a, TermPtr b) { return neg(eq(a, b)); }
TermPtr lt(TermPtr a, TermPtr b) { return make(Term::Op::Lt, Sort::Bool, {a, b}); }
TermPtr le(TermPtr a, TermPtr b) { return make(Term::Op::Le, Sort::Bool, {a, b}); }
TermPtr gt(TermPtr a, TermPtr b) { return make(Term::Op::Gt, Sort::Bool, {a, b}); }
TermPtr ge(TermPtr a, TermPtr b) { return make(Term::Op::Ge, Sort::Bool, {a, b}); }

TermPtr conj(std::vector<TermPtr> parts) {
  std::vector<TermPtr> kept;
  for (auto& p : parts) {
    if (is_bool(p, true)) continue;
    if (is_bool(p, false)) return bool_lit(false);
    if (p->op == Term::Op::And)
      kept.insert(kept.end(), p->args.begin(), p->args.end());
    else
      kept.push_back(std::move(p));
  }
  if (kept.empty()) return bool_lit(true);
  if (kept.size() == 1) return kept[0];
  return make(Term::Op::And, Sort::Bool, std::move(kept));
}

TermPtr disj(std::vector<TermPtr> parts) {
  std::vector<TermPtr> kept;
  for (auto& p : parts) {
    if (is_bool(p, false)) continue;
    if (is_bool(p, true)) return bool_lit(true);
    if (p->op == Term::Op::Or)
      kept.insert(kept.end(), p->args.begin(), p->args.end());
    else
      kept.push_back(std::move(p));
  }
  if (kept.empty()) return bool_lit(false);
  if (kept.size() == 1) return kept[0];
  return make(Term::Op::Or, Sort::Bool, std::move(kept));
}

TermPtr neg(TermPtr a) {
  if (a->op == Term::Op::BoolLit) return bool_lit(!a->bool_value);
  if (a->op == Term::Op::Not) return a->args[0];
  return make(Term::Op::Not, Sort::Bool, {a});
}

TermPtr implies(TermPtr a, TermPtr b) {
  if (is_bool(a, true)) return b;
  if (is_bool(a, false) || is_bool(b, true)) return bool_lit(true);
  return make(Term::Op::Implies, Sort::Bool, {a, b});
}

TermPtr iff(TermPtr a, TermPtr b) {
  if (trivially_equal(a, b)) return bool_lit(true);
  return make(Term::Op::Eq, Sort::Bool, {a, b});
}

TermPtr ite(TermPtr c, TermPtr t, TermPtr e) {
  if (is_bool(c, true)) return t;
  if (is_bool(c, false)) return e;
  return make(Term::Op::Ite, t->sort, {c, t, e});
}

TermPtr forall(std::string v, TermPtr body) {
  if (body->op == Term::Op::BoolLit) return body;
  auto t = make(Term::Op::Forall, Sort::Bool, {body});
  std::const_pointer_cast<Term>(t)->name = std::move(v);
  return t;
}

}  // namespace term

bool trivially_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Term::Op::Const:
    case Term::Op::Bound:
      return a->name == b->name;
    case Term::Op::IntLit:
      return a->int_value == b->int_value;
    case Term::Op::BoolLit:
      return a->bool_value == b->bool_value;
    default:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!trivially_equal(a->args[i], b->args[i])) return false;
      return true;
  }
}

namespace {

void signature_rec(const TermPtr& t, Signature& sig) {
  switch (t->op) {
    case Term::Op::Const:
      sig.constants.emplace(t->name, t->sort);
      return;
    case Term::Op::Apply: {
      FunctionDecl d{{}, t->sort};
      for (const auto& a : t->args) d.args.push_back(a->sort);
      sig.functions.emplace(t->name, d);
      break;
    }
    default:
      break;
  }
  for (const auto& a : t->args) signature_rec(a, sig);
}

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Int: return "Int";
    case Sort::Bool: return "Bool";
    case Sort::Array: return "(Array Int Int)";
  }
  return "Int";
}

void smt_rec(const TermPtr& t, std::ostream& os) {
  auto nary = [&](const char* op) {
    os << '(' << op;
    for (const auto& a : t->args) {
      os << ' ';
      smt_rec(a, os);
    }
    os << ')';
  };
  switch (t->op) {
    case Term::Op::IntLit:
      if (t->int_value < 0)
        os << "(- " << BigInt(-t->int_value) << ')';
      else
        os << t->int_value;
      return;
    case Term::Op::BoolLit:
      os << (t->bool_value ? "true" : "false");
      return;
    case Term::Op::Const:
    case Term::Op::Bound:
      os << '|' << t->name << '|';
      return;
    case Term::Op::Add: nary("+"); return;
    case Term::Op::Sub: nary("-"); return;
    case Term::Op::Mul: nary("*"); return;
    case Term::Op::Select: nary("select"); return;
    case Term::Op::Store: nary("store"); return;
    case Term::Op::Apply:
      if (t->args.empty()) {
        os << '|' << t->name << '|';
        return;
      }
      os << "(|" << t->name << '|';
      for (const auto& a : t->args) {
        os << ' ';
        smt_rec(a, os);
      }
      os << ')';
      return;
    case Term::Op::Eq: nary("="); return;
    case Term::Op::Lt: nary("<"); return;
    case Term::Op::Le: nary("<="); return;
    case Term::Op::Gt: nary(">"); return;
    case Term::Op::Ge: nary(">="); return;
    case Term::Op::And: nary("and"); return;
    case Term::Op::Or: nary("or"); return;
    case Term::Op::Not: nary("not"); return;
    case Term::Op::Implies: nary("=>"); return;
    case Term::Op::Ite: nary("ite"); return;
    case Term::Op::Forall:
      os << "(forall ((|" << t->name << "| Int)) ";
      smt_rec(t->args[0], os);
      os << ')';
      return;
  }
}

void infix_rec(const TermPtr& t, std::ostream& os) {
  auto bin = [&](const char* op) {
    os << '(';
    for (std::size_t i = 0; i < t->args.size(); ++i) {
      if (i) os << ' ' << op << ' ';
      infix_rec(t->args[i], os);
    }
    os << ')';
  };
  switch (t->op) {
    case Term::Op::IntLit: os << t->int_value; return;
    case Term::Op::BoolLit: os << (t->bool_value ? "true" : "false"); return;
    case Term::Op::Const:
    case Term::Op::Bound: os << t->name; return;
    case Term::Op::Add: bin("+"); return;
    case Term::Op::Sub: bin("-"); return;
    case Term::Op::Mul: bin("*"); return;
    case Term::Op::Select:
      infix_rec(t->args[0], os);
      os << '[';
      infix_rec(t->args[1], os);
      os << ']';
      return;
    case Term::Op::Store:
      infix_rec(t->args[0], os);
      os << '{';
      infix_rec(t->args[1], os);
      os << " <- ";
      infix_rec(t->args[2], os);
      os << '}';
      return;
    case Term::Op::Apply:
      os << t->name << '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ", ";
        infix_rec(t->args[i], os);
      }
      os << ')';
      return;
    case Term::Op::Eq: bin("="); return;
    case Term::Op::Lt: bin("<"); return;
    case Term::Op::Le: bin("<="); return;
    case Term::Op::Gt: bin(">"); return;
    case Term::Op::Ge: bin(">="); return;
    case Term::Op::And: bin("&&"); return;
    case Term::Op::Or: bin("||"); return;
    case Term::Op::Implies: bin("=>"); return;
    case Term::Op::Not:
      os << '!';
      infix_rec(t->args[0], os);
      return;
    case Term::Op::Ite:
      os << "ite(";
      infix_rec(t->args[0], os);
      os << ", ";
      infix_rec(t->args[1], os);
      os << ", ";
      infix_rec(t->args[2], os);
      os << ')';
      return;
    case Term::Op::Forall:
      os << "forall " << t->name << ". ";
      infix_rec(t->args[0], os);
      return;
  }
}

}  // namespace

void collect_signature(const TermPtr& t, Signature& sig) { signature_rec(t, sig); }

std::set<std::string> free_constants(const TermPtr& t) {
  Signature sig;
  signature_rec(t, sig);
  std::set<std::string> out;
  for (const auto& [name, sort] : sig.constants) out.insert(name);
  return out;
}

bool has_quantifier(const TermPtr& t) {
  if (t->op == Term::Op::Forall) return true;
  for (const auto& a : t->args)
    if (has_quantifier(a)) return true;
  return false;
}

bool is_nonlinear(const TermPtr& t) {
  if (t->op == Term::Op::Mul && t->args[0]->op != Term::Op::IntLit &&
      t->args[1]->op != Term::Op::IntLit)
    return true;
  for (const auto& a : t->args)
    if (is_nonlinear(a)) return true;
  return false;
}

TermPtr substitute_bound(const TermPtr& t, const std::string& v, const TermPtr& value) {
  if (t->op == Term::Op::Bound) return t->name == v ? value : t;
  if (t->op == Term::Op::Forall && t->name == v) return t;
  if (t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    args.push_back(substitute_bound(a, v, value));
    changed |= args.back() != a;
  }
  if (!changed) return t;
  auto copy = std::make_shared<Term>(*t);
  copy->args = std::move(args);
  return copy;
}

std::string to_smtlib(const TermPtr& t) {
  std::ostringstream os;
  smt_rec(t, os);
  return os.str();
}

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  infix_rec(t, os);
  return os.str();
}

std::string to_smtlib(Sort s) { return sort_name(s); }

}  // namespace mergeguard
