#include "mergeguard/ast.hpp"

#include <sstream>

namespace mergeguard {

std::string to_string(const Value& v) { return v ? v->str() : std::string("_|_"); }

Value Valuation::get(std::string_view var, const BigInt& index) const {
  auto it = entries_.find(Key{std::string(var), index});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void Valuation::set(const std::string& var, const BigInt& index, const Value& v) {
  if (v)
    entries_[Key{var, index}] = *v;
  else
    entries_.erase(Key{var, index});
}

std::string to_string(const Valuation& v) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [key, value] : v.entries()) {
    if (!first) os << ", ";
    first = false;
    os << key.first << '[' << key.second << "]=" << value;
  }
  os << '}';
  return os.str();
}

ExprPtr int_const(BigInt v) {
  auto e = std::make_shared<Expr>(Expr::Kind::IntConst);
  e->value = std::move(v);
  return e;
}

ExprPtr var(std::string name) {
  auto e = std::make_shared<Expr>(Expr::Kind::Var);
  e->name = std::move(name);
  return e;
}

ExprPtr array_read(std::string array, ExprPtr index) {
  auto e = std::make_shared<Expr>(Expr::Kind::ArrayRead);
  e->name = std::move(array);
  e->args = {std::move(index)};
  return e;
}

ExprPtr bin_op(ArithOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>(Expr::Kind::BinOp);
  e->op = op;
  e->args = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr bottom() {
  static const ExprPtr b = std::make_shared<Expr>(Expr::Kind::Bottom);
  return b;
}

ExprPtr apply_fn(std::string fn, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>(Expr::Kind::Apply);
  e->name = std::move(fn);
  e->args = std::move(args);
  return e;
}

PredPtr cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs) {
  auto p = std::make_shared<Pred>(Pred::Kind::Cmp);
  p->cmp = op;
  p->lhs = std::move(lhs);
  p->rhs = std::move(rhs);
  return p;
}

PredPtr pred_and(PredPtr l, PredPtr r) {
  auto p = std::make_shared<Pred>(Pred::Kind::And);
  p->args = {std::move(l), std::move(r)};
  return p;
}

PredPtr pred_or(PredPtr l, PredPtr r) {
  auto p = std::make_shared<Pred>(Pred::Kind::Or);
  p->args = {std::move(l), std::move(r)};
  return p;
}

PredPtr pred_not(PredPtr x) {
  auto p = std::make_shared<Pred>(Pred::Kind::Not);
  p->args = {std::move(x)};
  return p;
}

PredPtr pred_bool(bool b) {
  auto p = std::make_shared<Pred>(Pred::Kind::Bool);
  p->value = b;
  return p;
}

StmtPtr skip() {
  static const StmtPtr s = std::make_shared<Stmt>(Stmt::Kind::Skip);
  return s;
}

StmtPtr assign(std::string v, ExprPtr rhs) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::Assign);
  s->target = std::move(v);
  s->rhs = std::move(rhs);
  return s;
}

StmtPtr array_assign(std::string array, ExprPtr index, ExprPtr rhs) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::ArrayAssign);
  s->target = std::move(array);
  s->index = std::move(index);
  s->rhs = std::move(rhs);
  return s;
}

StmtPtr seq(StmtPtr first, StmtPtr second) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::Seq);
  s->body = {std::move(first), std::move(second)};
  return s;
}

StmtPtr seq(std::span<const StmtPtr> items) {
  if (items.empty()) return skip();
  StmtPtr acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = seq(items[i], acc);
  return acc;
}

StmtPtr if_stmt(PredPtr cond, StmtPtr then_branch, StmtPtr else_branch) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::If);
  s->cond = std::move(cond);
  s->body = {std::move(then_branch), std::move(else_branch)};
  return s;
}

StmtPtr while_stmt(PredPtr cond, StmtPtr loop_body) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::While);
  s->cond = std::move(cond);
  s->body = {std::move(loop_body)};
  return s;
}

StmtPtr hole() {
  static const StmtPtr h = std::make_shared<Stmt>(Stmt::Kind::Hole);
  return h;
}

bool is_atom(const Stmt& s) {
  return s.kind == Stmt::Kind::Skip || s.kind == Stmt::Kind::Assign ||
         s.kind == Stmt::Kind::ArrayAssign;
}

std::size_t num_holes(const Stmt& s) {
  if (s.kind == Stmt::Kind::Hole) return 1;
  std::size_t n = 0;
  for (const auto& c : s.body) n += num_holes(*c);
  return n;
}

namespace {

StmtPtr fill(const StmtPtr& h, std::span<const StmtPtr> edit, std::size_t& pos) {
  switch (h->kind) {
    case Stmt::Kind::Hole:
      if (pos >= edit.size()) throw EditArityMismatch("edit has fewer statements than holes");
      return edit[pos++];
    case Stmt::Kind::Seq: {
      auto a = fill(h->body[0], edit, pos);
      auto b = fill(h->body[1], edit, pos);
      if (a == h->body[0] && b == h->body[1]) return h;
      return seq(a, b);
    }
    case Stmt::Kind::If: {
      auto t = fill(h->body[0], edit, pos);
      auto e = fill(h->body[1], edit, pos);
      if (t == h->body[0] && e == h->body[1]) return h;
      return if_stmt(h->cond, t, e);
    }
    case Stmt::Kind::While: {
      auto b = fill(h->body[0], edit, pos);
      if (b == h->body[0]) return h;
      return while_stmt(h->cond, b);
    }
    default:
      return h;
  }
}

void flatten_into(const StmtPtr& s, std::vector<StmtPtr>& out) {
  if (s->kind == Stmt::Kind::Seq) {
    flatten_into(s->body[0], out);
    flatten_into(s->body[1], out);
  } else if (s->kind != Stmt::Kind::Skip) {
    out.push_back(s);
  }
}

bool node_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Stmt::Kind::Skip:
    case Stmt::Kind::Hole:
      return true;
    case Stmt::Kind::Assign:
      return a->target == b->target && expr_equal(*a->rhs, *b->rhs);
    case Stmt::Kind::ArrayAssign:
      return a->target == b->target && expr_equal(*a->index, *b->index) &&
             expr_equal(*a->rhs, *b->rhs);
    case Stmt::Kind::If:
      return pred_equal(*a->cond, *b->cond) && stmt_equal(a->body[0], b->body[0]) &&
             stmt_equal(a->body[1], b->body[1]);
    case Stmt::Kind::While:
      return pred_equal(*a->cond, *b->cond) && stmt_equal(a->body[0], b->body[0]);
    case Stmt::Kind::Seq:
      break;
  }
  return false;
}

}  // namespace

StmtPtr apply_edit(const StmtPtr& h, std::span<const StmtPtr> edit) {
  const auto n = num_holes(*h);
  if (n != edit.size())
    throw EditArityMismatch("program has " + std::to_string(n) + " holes but edit has " +
                            std::to_string(edit.size()) + " statements");
  std::size_t pos = 0;
  return fill(h, edit, pos);
}

std::vector<StmtPtr> flatten(const StmtPtr& s) {
  std::vector<StmtPtr> out;
  flatten_into(s, out);
  return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::IntConst:
      return a.value == b.value;
    case Expr::Kind::Var:
      return a.name == b.name;
    case Expr::Kind::Bottom:
      return true;
    case Expr::Kind::BinOp:
      if (a.op != b.op) return false;
      break;
    case Expr::Kind::ArrayRead:
    case Expr::Kind::Apply:
      if (a.name != b.name) return false;
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!expr_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

bool pred_equal(const Pred& a, const Pred& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Pred::Kind::Bool:
      return a.value == b.value;
    case Pred::Kind::Cmp:
      return a.cmp == b.cmp && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    default:
      if (a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!pred_equal(*a.args[i], *b.args[i])) return false;
      return true;
  }
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  auto fa = flatten(a);
  auto fb = flatten(b);
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (!node_equal(fa[i], fb[i])) return false;
  return true;
}

StmtPtr normalize(const StmtPtr& s) {
  auto items = flatten(s);
  for (auto& item : items) {
    if (item->kind == Stmt::Kind::If)
      item = if_stmt(item->cond, normalize(item->body[0]), normalize(item->body[1]));
    else if (item->kind == Stmt::Kind::While)
      item = while_stmt(item->cond, normalize(item->body[0]));
  }
  return seq(items);
}

std::size_t node_count(const Stmt& s) {
  std::size_t n = 1;
  for (const auto& c : s.body) n += node_count(*c);
  return n;
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Var || e.kind == Expr::Kind::ArrayRead) out.insert(e.name);
  for (const auto& a : e.args) collect_vars(*a, out);
}

void collect_vars(const Pred& p, std::set<std::string>& out) {
  if (p.kind == Pred::Kind::Cmp) {
    collect_vars(*p.lhs, out);
    collect_vars(*p.rhs, out);
  }
  for (const auto& a : p.args) collect_vars(*a, out);
}

void collect_vars(const Stmt& s, std::set<std::string>& out) {
  if (s.kind == Stmt::Kind::Assign || s.kind == Stmt::Kind::ArrayAssign) out.insert(s.target);
  if (s.index) collect_vars(*s.index, out);
  if (s.rhs) collect_vars(*s.rhs, out);
  if (s.cond) collect_vars(*s.cond, out);
  for (const auto& c : s.body) collect_vars(*c, out);
}

std::set<std::string> vars(const Stmt& s) {
  std::set<std::string> out;
  collect_vars(s, out);
  return out;
}

namespace {

void note_kind(std::map<std::string, VarKind>& kinds, const std::string& name, VarKind k) {
  auto [it, inserted] = kinds.emplace(name, k);
  if (!inserted && it->second != k)
    throw TypeError("variable '" + name + "' is used both as a scalar and as an array");
}

void kinds_of(const Expr& e, std::map<std::string, VarKind>& kinds) {
  switch (e.kind) {
    case Expr::Kind::Var:
      note_kind(kinds, e.name, VarKind::Scalar);
      return;
    case Expr::Kind::ArrayRead:
      note_kind(kinds, e.name, VarKind::Array);
      break;
    case Expr::Kind::Apply:
      // Arguments of a summary may be arrays; their kind comes from elsewhere.
      for (const auto& a : e.args)
        if (a->kind != Expr::Kind::Var) kinds_of(*a, kinds);
      return;
    default:
      break;
  }
  for (const auto& a : e.args) kinds_of(*a, kinds);
}

void kinds_of(const Pred& p, std::map<std::string, VarKind>& kinds) {
  if (p.kind == Pred::Kind::Cmp) {
    kinds_of(*p.lhs, kinds);
    kinds_of(*p.rhs, kinds);
  }
  for (const auto& a : p.args) kinds_of(*a, kinds);
}

}  // namespace

void infer_var_kinds(const Stmt& s, std::map<std::string, VarKind>& kinds) {
  note_kind(kinds, std::string(kOutVar), VarKind::Array);
  switch (s.kind) {
    case Stmt::Kind::Assign:
      if (s.rhs->kind != Expr::Kind::Apply) note_kind(kinds, s.target, VarKind::Scalar);
      kinds_of(*s.rhs, kinds);
      break;
    case Stmt::Kind::ArrayAssign:
      note_kind(kinds, s.target, VarKind::Array);
      kinds_of(*s.index, kinds);
      kinds_of(*s.rhs, kinds);
      break;
    default:
      if (s.cond) kinds_of(*s.cond, kinds);
      for (const auto& c : s.body) infer_var_kinds(*c, kinds);
  }
}

}  // namespace mergeguard
