#include "mergeguard/symexec.hpp"

#include "mergeguard/printer.hpp"

#include <algorithm>
#include <stdexcept>

namespace mergeguard {

std::string to_string(const Equality& e) { return e.lhs + " = " + e.rhs; }

SymEngine::SymEngine(SolverSession& solver, std::map<std::string, VarKind> kinds, int versions)
    : solver_(solver), kinds_(std::move(kinds)), versions_(versions) {}

void SymEngine::learn_kinds(const Stmt& s) {
  std::map<std::string, VarKind> found;
  infer_var_kinds(s, found);
  for (const auto& [id, kind] : found) kinds_.emplace(std::string(split_tag(id).first), kind);
}

Sort SymEngine::sort_of(const std::string& id) const {
  auto it = kinds_.find(std::string(split_tag(id).first));
  if (it != kinds_.end() && it->second == VarKind::Array) return Sort::Array;
  if (split_tag(id).first == kOutVar) return Sort::Array;
  return Sort::Int;
}

TermPtr SymEngine::lookup(const SymState& st, const std::string& id) const {
  auto it = st.env.find(id);
  if (it != st.env.end()) return it->second;
  return term::constant(initial_symbol(split_tag(id).first), sort_of(id));
}

TermPtr SymEngine::fresh(const std::string& id, Sort sort) {
  int k = ++generation_[id];
  return term::constant(id + "@" + std::to_string(k), sort);
}

TermPtr SymEngine::eval(const Expr& e, const SymState& st) {
  switch (e.kind) {
    case Expr::Kind::IntConst:
      return term::int_lit(e.value);
    case Expr::Kind::Var:
      return lookup(st, e.name);
    case Expr::Kind::ArrayRead:
      return term::select(lookup(st, e.name), eval(*e.args[0], st));
    case Expr::Kind::BinOp: {
      auto l = eval(*e.args[0], st), r = eval(*e.args[1], st);
      switch (e.op) {
        case ArithOp::Add: return term::add(l, r);
        case ArithOp::Sub: return term::sub(l, r);
        case ArithOp::Mul: return term::mul(l, r);
      }
      break;
    }
    case Expr::Kind::Bottom:
      return term::constant("bottom@" + std::to_string(++bottom_count_), Sort::Int);
    case Expr::Kind::Apply: {
      std::vector<TermPtr> args;
      for (const auto& a : e.args) args.push_back(eval(*a, st));
      return term::apply(e.name, std::move(args), Sort::Int);
    }
  }
  throw std::logic_error("bad expression");
}

TermPtr SymEngine::eval(const Pred& p, const SymState& st) {
  switch (p.kind) {
    case Pred::Kind::Bool:
      return term::bool_lit(p.value);
    case Pred::Kind::Not:
      return term::neg(eval(*p.args[0], st));
    case Pred::Kind::And:
      return term::conj({eval(*p.args[0], st), eval(*p.args[1], st)});
    case Pred::Kind::Or:
      return term::disj({eval(*p.args[0], st), eval(*p.args[1], st)});
    case Pred::Kind::Cmp: {
      auto l = eval(*p.lhs, st), r = eval(*p.rhs, st);
      switch (p.cmp) {
        case CmpOp::Eq: return term::eq(l, r);
        case CmpOp::Ne: return term::ne(l, r);
        case CmpOp::Lt: return term::lt(l, r);
        case CmpOp::Le: return term::le(l, r);
        case CmpOp::Gt: return term::gt(l, r);
        case CmpOp::Ge: return term::ge(l, r);
      }
    }
  }
  throw std::logic_error("bad predicate");
}

TermPtr SymEngine::define(SymState& st, const std::string& id, const TermPtr& value) {
  auto key = to_smtlib(value);
  if (auto it = st.memo.find(key); it != st.memo.end()) return it->second;
  if (auto it = numbering_.find(key); it != numbering_.end()) {
    st.facts.push_back(it->second.second);
    st.memo.emplace(std::move(key), it->second.first);
    return it->second.first;
  }
  auto sym = fresh(id, value->sort);
  st.facts.push_back(term::eq(sym, value));
  definitions_.insert(st.facts.back().get());
  numbering_.emplace(key, std::make_pair(sym, st.facts.back()));
  st.memo.emplace(std::move(key), sym);
  return sym;
}

void SymEngine::bind(SymState& st, const std::string& id, const TermPtr& value) {
  if (value->op == Term::Op::Const || value->op == Term::Op::IntLit) {
    st.env[id] = value;
    return;
  }
  st.env[id] = define(st, id, value);
}

void SymEngine::post(const Stmt& s, SymState& st) {
  if (product_options_.deadline && std::chrono::steady_clock::now() > *product_options_.deadline)
    throw BudgetExceeded("time budget exceeded");
  switch (s.kind) {
    case Stmt::Kind::Skip:
      return;
    case Stmt::Kind::Hole:
      throw std::logic_error("post on a hole");
    case Stmt::Kind::Assign:
      if (s.rhs->kind == Expr::Kind::Apply) {
        std::vector<TermPtr> args;
        for (const auto& a : s.rhs->args) args.push_back(eval(*a, st));
        bind(st, s.target, term::apply(s.rhs->name, std::move(args), sort_of(s.target)));
      } else {
        bind(st, s.target, eval(*s.rhs, st));
      }
      return;
    case Stmt::Kind::ArrayAssign: {
      auto idx = eval(*s.index, st);
      auto val = eval(*s.rhs, st);
      bind(st, s.target, term::store(lookup(st, s.target), idx, val));
      return;
    }
    case Stmt::Kind::Seq:
      post(*s.body[0], st);
      post(*s.body[1], st);
      return;
    case Stmt::Kind::If: {
      auto c = eval(*s.cond, st);
      if (c->op == Term::Op::BoolLit) {
        post(*s.body[c->bool_value ? 0 : 1], st);
        return;
      }
      const auto k = st.facts.size();
      SymState t = st, e = st;
      t.facts.push_back(c);
      e.facts.push_back(term::neg(c));
      post(*s.body[0], t);
      post(*s.body[1], e);
      st = merge(t, e, k);
      return;
    }
    case Stmt::Kind::While: {
      LoopSpec spec;
      auto mods = modifies(*s.body[0]);
      spec.havoc.assign(mods.begin(), mods.end());
      std::set<std::string> bases;
      for (const auto& m : mods) bases.insert(std::string(split_tag(m).first));
      spec.candidates = pairwise_candidates(bases);
      const Stmt* body = s.body[0].get();
      spec.body = [this, body](SymState entry) {
        post(*body, entry);
        return entry;
      };
      const Pred* cond = s.cond.get();
      spec.guards = [this, cond](const SymState& x) { return std::vector<TermPtr>{eval(*cond, x)}; };
      auto head = houdini(st, spec);
      record_invariant("while (" + to_string(*s.cond) + ")", head.invariant);
      st = exit_loop(std::move(head), spec);
      return;
    }
  }
}

SymState SymEngine::merge(const SymState& then_st, const SymState& else_st, std::size_t base_facts) {
  SymState out;
  out.facts.assign(then_st.facts.begin(), then_st.facts.begin() + base_facts);
  std::vector<TermPtr> tpart, epart;
  std::set<const Term*> hoisted;
  auto split = [&](const SymState& from, std::vector<TermPtr>& part) {
    for (auto it = from.facts.begin() + base_facts; it != from.facts.end(); ++it) {
      if (!definitions_.count(it->get()))
        part.push_back(*it);
      else if (hoisted.insert(it->get()).second)
        out.facts.push_back(*it);
    }
  };
  split(then_st, tpart);
  split(else_st, epart);
  const auto guard = to_smtlib(term::conj(tpart)) + "|" + to_smtlib(term::conj(epart));

  out.memo = then_st.memo;
  out.memo.insert(else_st.memo.begin(), else_st.memo.end());

  std::set<std::string> ids;
  for (const auto& [id, _] : then_st.env) ids.insert(id);
  for (const auto& [id, _] : else_st.env) ids.insert(id);

  // Plain two-way branch: phis become ite definitions, numbered like any
  // other value so that versions taking the same branch share them.
  if (tpart.size() == 1 && epart.size() == 1 && trivially_equal(epart[0], term::neg(tpart[0]))) {
    for (const auto& id : ids) {
      auto tv = lookup(then_st, id), ev = lookup(else_st, id);
      if (trivially_equal(tv, ev)) {
        out.env[id] = tv;
        continue;
      }
      out.env[id] = define(out, id, term::ite(tpart[0], tv, ev));
    }
    return out;
  }

  bool fresh_phi = false, reused = false;
  for (const auto& id : ids) {
    auto tv = lookup(then_st, id), ev = lookup(else_st, id);
    if (trivially_equal(tv, ev)) {
      out.env[id] = tv;
      continue;
    }
    // Same branch facts and the same values on both sides give the same phi.
    auto key = "phi|" + guard + "|" + to_smtlib(tv) + "|" + to_smtlib(ev);
    if (auto it = out.memo.find(key); it != out.memo.end()) {
      out.env[id] = it->second;
      reused = true;
      continue;
    }
    auto phi = fresh(id, tv->sort);
    tpart.push_back(term::eq(phi, tv));
    epart.push_back(term::eq(phi, ev));
    out.memo.emplace(std::move(key), phi);
    out.env[id] = phi;
    fresh_phi = true;
  }
  // A fully reused merge repeats the disjunction that introduced its phis.
  if (fresh_phi || !reused)
    out.facts.push_back(term::disj({term::conj(std::move(tpart)), term::conj(std::move(epart))}));
  return out;
}

TermPtr SymEngine::equality_term(const SymState& st, const Equality& e) const {
  return term::eq(lookup(st, e.lhs), lookup(st, e.rhs));
}

std::vector<Equality> SymEngine::filter_valid(const SymState& st, std::vector<Equality> candidates) {
  while (!candidates.empty()) {
    // Trivially true candidates stay, trivially false ones are dropped.
    std::vector<Equality> kept, open;
    std::vector<TermPtr> terms;
    for (const auto& c : candidates) {
      auto t = equality_term(st, c);
      if (t->op != Term::Op::BoolLit) {
        terms.push_back(t);
        open.push_back(c);
      } else if (t->bool_value) {
        kept.push_back(c);
      }
    }
    if (open.empty()) return kept;

    Probes probes;
    probes.terms = terms;
    probes.full_model = false;
    auto ans = solver_.check_entailment(st.facts, term::conj(terms), probes);
    if (ans.valid()) {
      kept.insert(kept.end(), open.begin(), open.end());
      std::sort(kept.begin(), kept.end());
      return kept;
    }
    if (!ans.invalid()) return {};
    std::vector<Equality> next = kept;
    bool dropped = false;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (ans.probe_values.at(i) != 0)
        next.push_back(open[i]);
      else
        dropped = true;
    }
    if (!dropped) return {};  // model disagrees with itself; give up soundly
    std::sort(next.begin(), next.end());
    candidates = std::move(next);
  }
  return {};
}

SymEngine::LoopHead SymEngine::houdini(const SymState& pre, const LoopSpec& spec) {
  auto inv = filter_valid(pre, spec.candidates);
  SymState head = pre;
  for (const auto& id : spec.havoc) head.env[id] = fresh(id, sort_of(id));
  while (true) {
    SymState entry = head;
    for (const auto& e : inv) entry.facts.push_back(equality_term(head, e));
    entry.facts.push_back(term::conj(spec.guards(head)));
    auto out = spec.body(std::move(entry));
    auto kept = filter_valid(out, inv);
    if (kept.size() == inv.size()) break;
    inv = std::move(kept);
  }
  for (const auto& e : inv) head.facts.push_back(equality_term(head, e));
  return {std::move(head), std::move(inv)};
}

SymState SymEngine::exit_loop(LoopHead head, const LoopSpec& spec) {
  SymState st = std::move(head.state);
  for (const auto& g : spec.guards(st)) st.facts.push_back(term::neg(g));
  return st;
}

void SymEngine::record_invariant(const std::string& label, const std::vector<Equality>& inv) {
  auto it = invariant_index_.find(label);
  if (it == invariant_index_.end()) {
    invariant_index_.emplace(label, invariants_.size());
    invariants_.push_back({label, inv});
  } else {
    invariants_[it->second].conjuncts = inv;
  }
}

std::vector<Equality> SymEngine::pairwise_candidates(const std::set<std::string>& bases) const {
  std::vector<Equality> out;
  for (const auto& b : bases)
    for (int i = 1; i <= versions_; ++i)
      for (int j = i + 1; j <= versions_; ++j) out.push_back({tagged(b, i), tagged(b, j)});
  return out;
}

}  // namespace mergeguard
