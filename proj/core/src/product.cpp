#include "mergeguard/product.hpp"

#include "mergeguard/printer.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <set>

namespace mergeguard {

std::string tagged(std::string_view name, int tag) {
  return std::string(name) + "#" + std::to_string(tag);
}

std::pair<std::string_view, int> split_tag(std::string_view name) {
  auto p = name.rfind('#');
  if (p == std::string_view::npos) return {name, 0};
  int tag = 0;
  auto rest = name.substr(p + 1);
  std::from_chars(rest.data(), rest.data() + rest.size(), tag);
  return {name.substr(0, p), tag};
}

ExprPtr rename(const ExprPtr& e, int tag) {
  switch (e->kind) {
    case Expr::Kind::IntConst:
    case Expr::Kind::Bottom:
      return e;
    case Expr::Kind::Var:
      return var(tagged(e->name, tag));
    case Expr::Kind::ArrayRead:
      return array_read(tagged(e->name, tag), rename(e->args[0], tag));
    case Expr::Kind::BinOp:
      return bin_op(e->op, rename(e->args[0], tag), rename(e->args[1], tag));
    case Expr::Kind::Apply: {
      std::vector<ExprPtr> args;
      for (const auto& a : e->args) args.push_back(rename(a, tag));
      return apply_fn(e->name, std::move(args));
    }
  }
  return e;
}

PredPtr rename(const PredPtr& p, int tag) {
  switch (p->kind) {
    case Pred::Kind::Bool:
      return p;
    case Pred::Kind::Cmp:
      return cmp(p->cmp, rename(p->lhs, tag), rename(p->rhs, tag));
    case Pred::Kind::Not:
      return pred_not(rename(p->args[0], tag));
    case Pred::Kind::And:
      return pred_and(rename(p->args[0], tag), rename(p->args[1], tag));
    case Pred::Kind::Or:
      return pred_or(rename(p->args[0], tag), rename(p->args[1], tag));
  }
  return p;
}

StmtPtr rename(const StmtPtr& s, int tag) {
  switch (s->kind) {
    case Stmt::Kind::Skip:
    case Stmt::Kind::Hole:
      return s;
    case Stmt::Kind::Assign:
      return assign(tagged(s->target, tag), rename(s->rhs, tag));
    case Stmt::Kind::ArrayAssign:
      return array_assign(tagged(s->target, tag), rename(s->index, tag), rename(s->rhs, tag));
    case Stmt::Kind::Seq:
      return seq(rename(s->body[0], tag), rename(s->body[1], tag));
    case Stmt::Kind::If:
      return if_stmt(rename(s->cond, tag), rename(s->body[0], tag), rename(s->body[1], tag));
    case Stmt::Kind::While:
      return while_stmt(rename(s->cond, tag), rename(s->body[0], tag));
  }
  return s;
}

std::size_t levenshtein(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double similarity(std::span<const StmtPtr> statements) {
  std::vector<std::vector<std::string>> toks;
  for (const auto& s : statements) toks.push_back(tokens(s, true));
  double total = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < toks.size(); ++i)
    for (std::size_t j = i + 1; j < toks.size(); ++j) {
      total += static_cast<double>(levenshtein(toks[i], toks[j]));
      ++pairs;
    }
  double mean = pairs ? total / static_cast<double>(pairs) : 0.0;
  return 1.0 / (1.0 + mean);
}

namespace {

// Persistent statement list so continuations can be shared between branches.
struct Cell {
  StmtPtr head;
  std::shared_ptr<const Cell> tail;
};
using List = std::shared_ptr<const Cell>;

List cons(StmtPtr head, List tail) {
  return std::make_shared<const Cell>(Cell{std::move(head), std::move(tail)});
}

List prepend(const StmtPtr& s, List tail) {
  auto items = flatten(s);
  for (auto it = items.rbegin(); it != items.rend(); ++it) tail = cons(*it, tail);
  return tail;
}

struct Prog {
  List items;
  int order;  // position among the original inputs
  std::shared_ptr<const std::set<std::string>> names;
};

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

class Builder {
 public:
  explicit Builder(const ProductOptions& o) : options_(o) {}

  StmtPtr prod(std::vector<Prog> ps) {
    std::erase_if(ps, [](const Prog& p) { return !p.items; });
    if (ps.empty()) return skip();
    if (ps.size() == 1) return materialize(ps[0].items);

    const Prog& first = ps[0];
    const StmtPtr& head = first.items->head;

    if (is_atom(*head)) {  // rule 1
      charge(1);
      std::vector<Prog> rest = ps;
      rest[0].items = first.items->tail;
      return mk_seq(head, prod(std::move(rest)));
    }

    if (head->kind == Stmt::Kind::If) {  // rule 2
      std::vector<Prog> then_ps = ps, else_ps = ps;
      then_ps[0].items = prepend(head->body[0], first.items->tail);
      else_ps[0].items = prepend(head->body[1], first.items->tail);
      charge(1);
      auto t = prod(std::move(then_ps));
      auto e = prod(std::move(else_ps));
      return if_stmt(head->cond, t, e);
    }

    // head is a loop
    for (std::size_t i = 1; i < ps.size(); ++i) {
      if (ps[i].items->head->kind != Stmt::Kind::While) {  // rule 3
        assert(disjoint(*ps[0].names, *ps[i].names));
        std::vector<Prog> reordered;
        reordered.push_back(ps[i]);
        for (std::size_t k = 1; k < ps.size(); ++k)
          if (k != i) reordered.push_back(ps[k]);
        reordered.push_back(ps[0]);
        return prod(std::move(reordered));
      }
    }

    // rule 4: every program starts with a loop
    std::vector<Prog> loops, conts;
    for (const auto& p : ps) {
      loops.push_back({cons(p.items->head, nullptr), p.order, p.names});
      conts.push_back({p.items->tail, p.order, p.names});
    }
    auto s1 = loops_product(std::move(loops));
    auto s2 = prod(std::move(conts));
    return mk_seq(s1, s2);
  }

 private:
  ProductOptions options_;
  std::size_t nodes_ = 0;

  std::size_t checks_ = 0;

  void charge(std::size_t n) {
    nodes_ += n;
    if (nodes_ > options_.node_limit)
      throw ProductTooLarge("product exceeds " + std::to_string(options_.node_limit) + " nodes");
    if (options_.deadline && (checks_++ & 1023) == 0 &&
        std::chrono::steady_clock::now() > *options_.deadline)
      throw BudgetExceeded("time budget exceeded");
  }

  StmtPtr mk_seq(const StmtPtr& a, const StmtPtr& b) {
    if (a->kind == Stmt::Kind::Skip) return b;
    if (b->kind == Stmt::Kind::Skip) return a;
    charge(1);
    return seq(a, b);
  }

  StmtPtr materialize(List l) {
    std::vector<StmtPtr> items;
    for (; l; l = l->tail) {
      charge(node_count(*l->head));
      items.push_back(l->head);
    }
    if (items.size() > 1) charge(items.size() - 1);
    return seq(items);
  }

  // Rule 5 applied pairwise inside a set of single-loop programs.
  StmtPtr loops_product(std::vector<Prog> ls) {
    if (ls.size() == 1) return materialize(ls[0].items);

    std::size_t best_i = 0, best_j = 1;
    double best = -1;
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        StmtPtr pair[] = {ls[i].items->head, ls[j].items->head};
        double sim = similarity(pair);
        if (sim > best) {
          best = sim;
          best_i = i;
          best_j = j;
        }
      }
    if (ls[best_j].order < ls[best_i].order) std::swap(best_i, best_j);
    const Prog& a = ls[best_i];
    const Prog& b = ls[best_j];
    assert(disjoint(*a.names, *b.names));

    const StmtPtr& la = a.items->head;
    const StmtPtr& lb = b.items->head;
    auto body = prod({{prepend(la->body[0], nullptr), a.order, a.names},
                      {prepend(lb->body[0], nullptr), b.order, b.names}});
    auto w = while_stmt(pred_and(la->cond, lb->cond), body);
    auto r = if_stmt(la->cond, la, if_stmt(lb->cond, lb, skip()));
    charge(5 + node_count(*la) + node_count(*lb));

    auto names = std::make_shared<std::set<std::string>>(*a.names);
    names->insert(b.names->begin(), b.names->end());
    Prog merged{cons(w, cons(r, nullptr)), std::min(a.order, b.order), names};

    std::vector<Prog> next;
    next.push_back(std::move(merged));
    for (std::size_t k = 0; k < ls.size(); ++k)
      if (k != best_i && k != best_j) next.push_back(ls[k]);
    return prod(std::move(next));
  }
};

}  // namespace

StmtPtr construct_product(std::span<const StmtPtr> inputs, const ProductOptions& options) {
  std::vector<Prog> ps;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto names = std::make_shared<std::set<std::string>>(vars(*inputs[i]));
    for (const auto& p : ps)
      if (!disjoint(*p.names, *names))
        throw std::invalid_argument("product inputs share variables");
    ps.push_back({prepend(inputs[i], nullptr), static_cast<int>(i), names});
  }
  Builder b(options);
  return b.prod(std::move(ps));
}

}  // namespace mergeguard
