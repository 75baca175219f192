#include "mergeguard/generator.hpp"

#include "mergeguard/ndiff.hpp"

#include <algorithm>
#include <cctype>

namespace mergeguard {

namespace {

class Gen {
 public:
  Gen(std::mt19937_64& rng, const GenOptions& o) : rng_(rng), o_(o) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  void reserve_counters(const Stmt& s) {
    for (const auto& v : vars(s))
      if (is_counter(v)) next_counter_ = std::max(next_counter_, std::stoi(v.substr(o_.counter_prefix.size())) + 1);
  }

  bool is_counter(const std::string& v) const {
    if (v.size() <= o_.counter_prefix.size() || v.rfind(o_.counter_prefix, 0) != 0) return false;
    for (std::size_t i = o_.counter_prefix.size(); i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return std::find(o_.scalars.begin(), o_.scalars.end(), v) == o_.scalars.end();
  }

  ExprPtr index() {
    if (!o_.scalars.empty() && coin(0.25)) return var(o_.scalars[pick(0, o_.scalars.size() - 1)]);
    return int_const(pick(0, 3));
  }

  ExprPtr expr(int depth) {
    int r = pick(0, depth > 0 ? 9 : 5);
    if (r <= 1 || o_.scalars.empty()) return int_const(pick(-o_.max_const, o_.max_const));
    if (r <= 4) return var(o_.scalars[pick(0, o_.scalars.size() - 1)]);
    if (r == 5) {
      if (!o_.arrays.empty() && coin(0.5))
        return array_read(o_.arrays[pick(0, o_.arrays.size() - 1)], index());
      return var(o_.scalars[pick(0, o_.scalars.size() - 1)]);
    }
    ArithOp op = r == 9 ? ArithOp::Mul : (r % 2 ? ArithOp::Add : ArithOp::Sub);
    return bin_op(op, expr(depth - 1), expr(depth - 1));
  }

  PredPtr pred(int depth) {
    int r = pick(0, depth > 0 ? 7 : 5);
    if (r <= 5) return cmp(static_cast<CmpOp>(r), expr(1), expr(1));
    if (r == 6) return pred_not(pred(depth - 1));
    return coin(0.5) ? pred_and(pred(depth - 1), pred(depth - 1))
                     : pred_or(pred(depth - 1), pred(depth - 1));
  }

  StmtPtr atom() {
    int r = pick(0, 6);
    if (r <= 3 && !o_.scalars.empty())
      return assign(o_.scalars[pick(0, o_.scalars.size() - 1)], expr(2));
    if (r == 4 && !o_.arrays.empty())
      return array_assign(o_.arrays[pick(0, o_.arrays.size() - 1)], index(), expr(1));
    return array_assign(std::string(kOutVar), index(), expr(2));
  }

  StmtPtr stmt(int depth) {
    int r = pick(0, depth > 0 ? 9 : 6);
    if (r <= 6) return atom();
    if (r <= 8 || !o_.loops) return if_stmt(pred(1), block(depth - 1), coin(0.3) ? skip() : block(depth - 1));
    auto i = o_.counter_prefix + std::to_string(next_counter_++);
    auto body = seq(block(depth - 1), assign(i, bin_op(ArithOp::Add, var(i), int_const(1))));
    return seq(assign(i, int_const(0)), while_stmt(cmp(CmpOp::Lt, var(i), int_const(pick(1, 3))), body));
  }

  StmtPtr block(int depth) {
    std::vector<StmtPtr> items;
    int n = pick(1, o_.max_block);
    for (int k = 0; k < n; ++k) items.push_back(stmt(depth));
    return seq(items);
  }

  bool protected_item(const Stmt& s) const {
    return (s.kind == Stmt::Kind::Assign && is_counter(s.target));
  }

  StmtPtr mutate(const StmtPtr& s, int depth) {
    auto items = flatten(s);
    std::vector<std::size_t> compound, editable;
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (items[k]->kind == Stmt::Kind::If || items[k]->kind == Stmt::Kind::While) compound.push_back(k);
      if (!protected_item(*items[k])) editable.push_back(k);
    }
    if (!compound.empty() && coin(0.4)) {
      auto k = compound[pick(0, compound.size() - 1)];
      const auto& c = items[k];
      if (c->kind == Stmt::Kind::If) {
        if (coin(0.25))
          items[k] = if_stmt(pred(1), c->body[0], c->body[1]);
        else if (coin(0.5))
          items[k] = if_stmt(c->cond, mutate(c->body[0], depth - 1), c->body[1]);
        else
          items[k] = if_stmt(c->cond, c->body[0], mutate(c->body[1], depth - 1));
      } else {
        items[k] = while_stmt(c->cond, mutate(c->body[0], depth - 1));
      }
      return seq(items);
    }
    std::vector<std::size_t> atoms, ifs;
    for (auto k : editable) {
      if (is_atom(*items[k]) && items[k]->kind != Stmt::Kind::Skip) atoms.push_back(k);
      if (items[k]->kind == Stmt::Kind::If) ifs.push_back(k);
    }
    switch (pick(0, 6)) {
      case 0:  // insertion
        break;
      case 1:  // replacement
        if (atoms.empty()) break;
        {
          auto k = atoms[pick(0, atoms.size() - 1)];
          const auto& a = items[k];
          items[k] = a->kind == Stmt::Kind::Assign ? assign(a->target, expr(2))
                                                  : array_assign(a->target, a->index, expr(2));
          return seq(items);
        }
      case 2:  // deletion
        if (editable.size() < 2) break;
        items.erase(items.begin() + editable[pick(0, editable.size() - 1)]);
        return seq(items);
      case 3:  // branch swap
        if (ifs.empty()) break;
        {
          auto k = ifs[pick(0, ifs.size() - 1)];
          items[k] = if_stmt(items[k]->cond, items[k]->body[1], items[k]->body[0]);
          return seq(items);
        }
      case 4:  // predicate negation
        if (ifs.empty()) break;
        {
          auto k = ifs[pick(0, ifs.size() - 1)];
          items[k] = if_stmt(pred_not(items[k]->cond), items[k]->body[0], items[k]->body[1]);
          return seq(items);
        }
      case 5:  // patch duplication
        if (atoms.empty()) break;
        {
          auto k = atoms[pick(0, atoms.size() - 1)];
          items.insert(items.begin() + k + 1, items[k]);
          return seq(items);
        }
      case 6:  // constant tweak
        if (atoms.empty()) break;
        {
          auto k = atoms[pick(0, atoms.size() - 1)];
          const auto& a = items[k];
          auto rhs = bin_op(coin(0.5) ? ArithOp::Add : ArithOp::Sub, a->rhs, int_const(1));
          items[k] = a->kind == Stmt::Kind::Assign ? assign(a->target, rhs)
                                                  : array_assign(a->target, a->index, rhs);
          return seq(items);
        }
    }
    items.insert(items.begin() + pick(0, items.size()), stmt(std::max(depth - 1, 0)));
    return seq(items);
  }

 private:
  std::mt19937_64& rng_;
  const GenOptions& o_;
  int next_counter_ = 0;
};

}  // namespace

StmtPtr gen_program(std::mt19937_64& rng, const GenOptions& options) {
  Gen g(rng, options);
  return normalize(g.block(options.max_depth));
}

StmtPtr mutate(std::mt19937_64& rng, const StmtPtr& s, const GenOptions& options) {
  Gen g(rng, options);
  g.reserve_counters(*s);
  return normalize(g.mutate(s, options.max_depth));
}

Scenario gen_scenario(std::mt19937_64& rng, const GenOptions& options) {
  Gen g(rng, options);
  auto base = normalize(g.block(options.max_depth));
  g.reserve_counters(*base);
  auto a = g.coin(0.1) ? base : normalize(g.mutate(base, options.max_depth));
  g.reserve_counters(*a);
  auto b = g.coin(0.1) ? base : normalize(g.mutate(base, options.max_depth));
  g.reserve_counters(*b);

  const StmtPtr three[] = {base, a, b};
  auto d = ndiff(three);
  Edit merged;
  for (std::size_t h = 0; h < d.edits[0].size(); ++h) {
    const auto &eo = d.edits[0][h], &ea = d.edits[1][h], &eb = d.edits[2][h];
    if (stmt_equal(ea, eo))
      merged.push_back(eb);
    else if (stmt_equal(eb, eo))
      merged.push_back(ea);
    else
      switch (g.pick(0, 3)) {
        case 0: merged.push_back(ea); break;
        case 1: merged.push_back(eb); break;
        case 2: merged.push_back(seq(ea, eb)); break;
        default: merged.push_back(seq(eb, ea)); break;
      }
  }
  auto m = normalize(apply_edit(d.shared, merged));
  if (g.coin(0.1)) m = normalize(g.mutate(m, options.max_depth));
  return Scenario{{base, a, b, m}};
}

}  // namespace mergeguard
