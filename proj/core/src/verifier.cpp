#include "mergeguard/verifier.hpp"

#include "mergeguard/analysis.hpp"
#include "mergeguard/interpreter.hpp"
#include "mergeguard/printer.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

namespace mergeguard {

std::string to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::Compositional: return "compositional";
    case VerifyMode::FullProduct: return "full-product";
    case VerifyMode::NoDependence: return "no-dependence";
  }
  return "?";
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Verified: return "verified";
    case Verdict::Kind::Conflict: return "conflict";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

Formula cf_var(const std::array<TermPtr, 4>& v) {
  using namespace term;
  auto all = conj({eq(v[0], v[1]), eq(v[0], v[2]), eq(v[0], v[3])});
  if (all->op == Term::Op::BoolLit && all->bool_value) return all;
  return disj({all, conj({implies(ne(v[0], v[1]), eq(v[1], v[3])),
                          implies(ne(v[0], v[2]), eq(v[2], v[3]))})});
}

Formula cf_out_at(const std::array<TermPtr, 4>& out, const TermPtr& k) {
  using namespace term;
  std::array<TermPtr, 4> a;
  for (int i = 0; i < 4; ++i) a[i] = select(out[i], k);
  return conj({implies(ne(a[0], a[1]), eq(a[3], a[1])),
               implies(ne(a[0], a[2]), eq(a[3], a[2])),
               implies(conj({eq(a[0], a[1]), eq(a[0], a[2])}), eq(a[3], a[0]))});
}

namespace {

std::array<TermPtr, 4> versions_of(const SymEngine& engine, const SymState& st,
                                   const std::string& v) {
  std::array<TermPtr, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = engine.lookup(st, tagged(v, i + 1));
  return out;
}

}  // namespace

Formula conflict_freedom(const SymEngine& engine, const SymState& st, const VerifyOptions& options) {
  using namespace term;
  const std::string out_name(kOutVar);
  const auto out = versions_of(engine, st, out_name);
  auto k = bound("k");

  std::vector<TermPtr> scalars, indexed;
  for (const auto& v : options.cf.check_vars) {
    if (v == out_name) continue;
    auto t = versions_of(engine, st, v);
    if (engine.sort_of(v) == Sort::Array) {
      std::array<TermPtr, 4> at;
      for (int i = 0; i < 4; ++i) at[i] = select(t[i], k);
      indexed.push_back(cf_var(at));
    } else {
      scalars.push_back(cf_var(t));
    }
  }

  TermPtr out_part;
  if (options.cf.global_otherwise) {
    std::array<TermPtr, 4> a;
    for (int i = 0; i < 4; ++i) a[i] = select(out[i], k);
    auto chi1 = forall("k", implies(ne(a[0], a[1]), eq(a[3], a[1])));
    auto chi2 = forall("k", implies(ne(a[0], a[2]), eq(a[3], a[2])));
    auto chi3 = forall("k", implies(conj({eq(a[0], a[1]), eq(a[0], a[2])}), eq(a[3], a[0])));
    out_part = disj({conj({chi1, chi2}), chi3});
    if (!indexed.empty()) scalars.push_back(forall("k", conj(indexed)));
  } else {
    indexed.insert(indexed.begin(), cf_out_at(out, k));
    out_part = forall("k", conj(indexed));
  }
  scalars.insert(scalars.begin(), out_part);
  return conj(scalars);
}

namespace {

class Relational {
 public:
  Relational(SymEngine& engine, const std::vector<Edit>& edits, const VerifyOptions& options,
             Diagnostics* diag)
      : engine_(engine), edits_(edits), options_(options), diag_(diag) {}

  std::array<std::size_t, 4> cursor{};

  void run(const StmtPtr& s, SymState& st) {
    auto items = flatten(s);
    for (std::size_t i = 0; i < items.size();) {
      if (num_holes(*items[i]) == 0) {
        std::size_t j = i;
        while (j < items.size() && num_holes(*items[j]) == 0) ++j;
        block(std::span<const StmtPtr>(items).subspan(i, j - i), st);
        i = j;
        continue;
      }
      const auto& item = items[i++];
      switch (item->kind) {
        case Stmt::Kind::Hole: hole(st); break;
        case Stmt::Kind::If: branch(item, st); break;
        case Stmt::Kind::While: loop(item, st); break;
        default: throw std::logic_error("unexpected statement with holes");
      }
    }
  }

 private:
  SymEngine& engine_;
  const std::vector<Edit>& edits_;
  const VerifyOptions& options_;
  Diagnostics* diag_;

  void count(int rule) {
    if (diag_) ++diag_->rule_counts[rule];
  }

  void note(int rule, std::size_t first, std::size_t n) {
    if (!diag_) return;
    for (std::size_t h = first; h < first + n; ++h) diag_->hole_rules[h + 1] = rule;
  }

  bool entails(const SymState& st, const Formula& f) {
    if (f->op == Term::Op::BoolLit) return f->bool_value;
    return engine_.solver().check_entailment(st.facts, f).valid();
  }

  void post_product(std::vector<StmtPtr> programs, SymState& st) {
    auto p = construct_product(programs, engine_.product_options());
    engine_.post(*p, st);
  }

  // Rule 1: a hole runs the four edit heads as one product.
  void hole(SymState& st) {
    count(1);
    note(1, cursor[0], 1);
    std::vector<StmtPtr> programs;
    for (int i = 0; i < 4; ++i) programs.push_back(rename(edits_[i].at(cursor[i]++), i + 1));
    post_product(std::move(programs), st);
  }

  // Rule 2: hole-free code shared by every version, summarized by
  // uninterpreted functions once all versions agree on its inputs.
  void block(std::span<const StmtPtr> items, SymState& st) {
    auto code = seq(items);
    if (options_.mode == VerifyMode::NoDependence) {
      fallback(code, st);
      return;
    }
    std::vector<TermPtr> guard;
    for (const auto& v : vars(*code)) guard.push_back(cf_var(versions_of(engine_, st, v)));
    if (!entails(st, term::conj(guard))) {
      fallback(code, st);
      return;
    }
    count(2);
    std::size_t start = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i]->kind != Stmt::Kind::ArrayAssign) continue;
      summarize(items.subspan(start, i - start), st);
      summarize_store(items[i], st);
      start = i + 1;
    }
    summarize(items.subspan(start), st);
  }

  static constexpr int kTags[] = {1, 2, 3, 4};

  void summarize(std::span<const StmtPtr> items, SymState& st) {
    auto summary = summarize_fragment(items, kTags, engine_.registry());
    std::vector<TermPtr> values;
    for (const auto& a : summary.assigns) {
      std::vector<TermPtr> args;
      for (const auto& x : a.args) args.push_back(engine_.lookup(st, x));
      values.push_back(term::apply(a.fn, std::move(args), engine_.sort_of(a.target)));
    }
    for (std::size_t i = 0; i < values.size(); ++i)
      engine_.bind(st, summary.assigns[i].target, values[i]);
  }

  // An array write touches one cell, so only the index and the value are
  // abstracted; a whole-array function would forget every other cell.
  TermPtr uf_of(const StmtPtr& s, const char* part, const Expr& e, int tag, const SymState& st) {
    std::set<std::string> deps;
    collect_vars(e, deps);
    std::vector<TermPtr> args;
    for (const auto& x : deps) args.push_back(engine_.lookup(st, tagged(x, tag)));
    if (args.empty()) return engine_.eval(e, st);
    const auto& fn = engine_.registry().symbol(s.get(), 1, s->target + part);
    return term::apply(fn, std::move(args), Sort::Int);
  }

  void summarize_store(const StmtPtr& s, SymState& st) {
    std::array<TermPtr, 4> values;
    for (int tag : kTags) {
      auto a = tagged(s->target, tag);
      values[tag - 1] = term::store(engine_.lookup(st, a), uf_of(s, "[]", *s->index, tag, st),
                                    uf_of(s, ":=", *s->rhs, tag, st));
    }
    for (int tag : kTags) engine_.bind(st, tagged(s->target, tag), values[tag - 1]);
  }

  std::vector<TermPtr> conditions(const PredPtr& c, const SymState& st) {
    std::vector<TermPtr> out;
    for (int i = 1; i <= 4; ++i) out.push_back(engine_.eval(*rename(c, i), st));
    return out;
  }

  static Formula all_agree(const std::vector<TermPtr>& cs) {
    std::vector<TermPtr> parts;
    for (std::size_t i = 1; i < cs.size(); ++i) parts.push_back(term::iff(cs[0], cs[i]));
    return term::conj(parts);
  }

  // Rule 4: versions take the same branch.
  void branch(const StmtPtr& s, SymState& st) {
    auto cs = conditions(s->cond, st);
    if (!entails(st, all_agree(cs))) {
      fallback(s, st);
      return;
    }
    count(4);
    const auto k = st.facts.size();
    SymState t = st, e = st;
    t.facts.push_back(cs[0]);
    e.facts.push_back(term::neg(cs[0]));
    run(s->body[0], t);
    run(s->body[1], e);
    st = engine_.merge(t, e, k);
  }

  // Rule 5: versions run the loop in lockstep under an equality invariant.
  void loop(const StmtPtr& s, SymState& st) {
    const auto saved = cursor;
    const auto holes = num_holes(*s);
    LoopSpec spec;
    std::set<std::string> mods, bases;
    for (int i = 0; i < 4; ++i) {
      std::span<const StmtPtr> slice(edits_[i].data() + cursor[i], holes);
      auto filled = rename(apply_edit(s, slice), i + 1);
      auto m = modifies(*filled);
      mods.insert(m.begin(), m.end());
    }
    // Every version's copy of a modified variable changes, even if only one writes it.
    for (const auto& m : mods) bases.insert(std::string(split_tag(m).first));
    for (const auto& b : bases)
      for (int i = 1; i <= 4; ++i) spec.havoc.push_back(tagged(b, i));
    spec.candidates = engine_.pairwise_candidates(bases);
    const auto body = s->body[0];
    spec.body = [this, body, saved](SymState entry) {
      cursor = saved;
      run(body, entry);
      return entry;
    };
    const auto cond = s->cond;
    spec.guards = [this, cond](const SymState& x) { return conditions(cond, x); };

    auto head = engine_.houdini(st, spec);
    for (int i = 0; i < 4; ++i) cursor[i] = saved[i] + holes;
    if (!entails(head.state, all_agree(spec.guards(head.state)))) {
      cursor = saved;
      fallback(s, st);
      return;
    }
    count(5);
    engine_.record_invariant("while (" + to_string(*s->cond) + ")", head.invariant);
    st = engine_.exit_loop(std::move(head), spec);
  }

  // Rule 6: fill the holes of `s` per version and analyze the product.
  void fallback(const StmtPtr& s, SymState& st) {
    count(6);
    const auto holes = num_holes(*s);
    note(6, cursor[0], holes);
    std::vector<StmtPtr> programs;
    for (int i = 0; i < 4; ++i) {
      std::span<const StmtPtr> slice(edits_[i].data() + cursor[i], holes);
      programs.push_back(rename(apply_edit(s, slice), i + 1));
      cursor[i] += holes;
    }
    post_product(std::move(programs), st);
  }
};

bool mentions_bound(const TermPtr& t) {
  if (t->op == Term::Op::Bound) return true;
  for (const auto& a : t->args)
    if (mentions_bound(a)) return true;
  return false;
}

// Reads under a quantifier have no value in the model and are skipped.
void collect_initial_reads(const TermPtr& t, std::map<std::string, std::pair<TermPtr, TermPtr>>& out) {
  if (t->op == Term::Op::Select && t->args[0]->op == Term::Op::Const &&
      t->args[0]->name.ends_with("@0") && !mentions_bound(t->args[1]))
    out.emplace(to_smtlib(t), std::make_pair(t->args[0], t->args[1]));
  for (const auto& a : t->args) collect_initial_reads(a, out);
}

SolverStats operator-(const SolverStats& a, const SolverStats& b) {
  return {a.queries - b.queries, a.valid - b.valid, a.invalid - b.invalid, a.unknown - b.unknown,
          a.seconds - b.seconds};
}

enum class Replay { Confirmed, NoViolation, OutOfFuel };

Replay replay(const std::array<StmtPtr, 4>& programs, const Valuation& sigma,
              const VerifyOptions& options, Verdict& verdict) {
  std::array<Valuation, 4> finals;
  for (int i = 0; i < 4; ++i) {
    auto r = interpret(*programs[i], sigma, options.replay_fuel);
    if (exhausted(r)) return Replay::OutOfFuel;
    finals[i] = std::get<Valuation>(std::move(r));
    verdict.finals[i] = finals[i];
  }
  verdict.violation =
      find_cf_violation({&finals[0], &finals[1], &finals[2], &finals[3]}, options.cf);
  return verdict.violation ? Replay::Confirmed : Replay::NoViolation;
}

const std::string kStuck = "stuck'";

// Loops become `depth` nested ifs; a run that would iterate further sets the
// stuck flag, and the query below only admits runs that leave it clear.
StmtPtr unroll(const StmtPtr& s, int depth) {
  switch (s->kind) {
    case Stmt::Kind::Seq: {
      std::vector<StmtPtr> items;
      for (const auto& c : s->body) items.push_back(unroll(c, depth));
      return seq(items);
    }
    case Stmt::Kind::If:
      return if_stmt(s->cond, unroll(s->body[0], depth), unroll(s->body[1], depth));
    case Stmt::Kind::While: {
      auto body = unroll(s->body[0], depth);
      StmtPtr out = if_stmt(s->cond, assign(kStuck, int_const(1)), skip());
      for (int k = 0; k < depth; ++k) out = if_stmt(s->cond, seq(body, out), skip());
      return out;
    }
    default:
      return s;
  }
}

std::optional<Valuation> bounded_witness(const std::array<StmtPtr, 4>& programs,
                                         std::map<std::string, VarKind> kinds,
                                         const VerifyOptions& options, SolverSession& solver) {
  const auto inputs = kinds;
  kinds.emplace(kStuck, VarKind::Scalar);
  SymEngine engine(solver, kinds, 4);
  engine.product_options() = options.product;
  SymState st;
  for (int i = 0; i < 4; ++i) {
    auto p = seq(assign(kStuck, int_const(0)), unroll(programs[i], options.witness_unroll));
    engine.post(*rename(p, i + 1), st);
    st.facts.push_back(term::eq(engine.lookup(st, tagged(kStuck, i + 1)), term::int_lit(0)));
  }
  auto goal = conflict_freedom(engine, st, options);
  Probes probes;
  std::map<std::string, std::pair<TermPtr, TermPtr>> reads;
  for (const auto& f : st.facts) collect_initial_reads(f, reads);
  collect_initial_reads(goal, reads);
  for (const auto& [_, r] : reads) probes.array_reads.push_back(r);
  auto answer = solver.check_entailment(st.facts, goal, probes);
  if (!answer.invalid()) return std::nullopt;
  return concretize(answer.model, inputs);
}

}  // namespace

RelationalResult relational_post(SymEngine& engine, const StmtPtr& shared,
                                 const std::vector<Edit>& edits, SymState init,
                                 const VerifyOptions& options, Diagnostics* diag) {
  if (edits.size() != 4) throw std::invalid_argument("relational_post needs four edits");
  const auto holes = num_holes(*shared);
  for (const auto& e : edits)
    if (e.size() != holes)
      throw EditArityMismatch("edit has " + std::to_string(e.size()) + " entries for " +
                              std::to_string(holes) + " holes");
  Relational rel(engine, edits, options, diag);
  rel.run(shared, init);
  for (int i = 0; i < 4; ++i)
    if (rel.cursor[i] != edits[i].size()) throw std::logic_error("edits not fully consumed");
  return {std::move(init), rel.cursor};
}

Verdict verify(const StmtPtr& shared, const std::vector<Edit>& edits, const VerifyOptions& options,
               SolverSession& solver) {
  const auto start = std::chrono::steady_clock::now();
  const auto stats_before = solver.stats();
  Verdict verdict;
  auto& diag = verdict.diagnostics;
  diag.holes = num_holes(*shared);

  std::array<StmtPtr, 4> programs;
  std::map<std::string, VarKind> kinds;
  for (int i = 0; i < 4; ++i) {
    programs[i] = apply_edit(shared, edits.at(i));
    infer_var_kinds(*programs[i], kinds);
  }
  for (const auto& v : options.cf.check_vars) kinds.emplace(v, VarKind::Scalar);

  auto finish = [&] {
    diag.solver = solver.stats() - stats_before;
    diag.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  SymEngine engine(solver, kinds, 4);
  engine.product_options() = options.product;
  SymState st;
  try {
    st = relational_post(engine, shared, edits, SymState{}, options, &diag).state;
  } catch (const ProductTooLarge&) {
    diag.invariants = engine.invariants();
    verdict.kind = Verdict::Kind::Unknown;
    verdict.reason = "product too large";
    finish();
    return verdict;
  } catch (const BudgetExceeded&) {
    diag.invariants = engine.invariants();
    verdict.kind = Verdict::Kind::Unknown;
    verdict.reason = "time budget exceeded";
    finish();
    return verdict;
  }
  diag.invariants = engine.invariants();
  diag.rpc_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto goal = conflict_freedom(engine, st, options);
  Probes probes;
  std::map<std::string, std::pair<TermPtr, TermPtr>> reads;
  for (const auto& f : st.facts) collect_initial_reads(f, reads);
  collect_initial_reads(goal, reads);
  for (const auto& [_, r] : reads) probes.array_reads.push_back(r);

  auto answer = solver.check_entailment(st.facts, goal, probes);
  if (answer.valid()) {
    verdict.kind = Verdict::Kind::Verified;
    finish();
    return verdict;
  }
  if (!answer.invalid()) {
    verdict.kind = Verdict::Kind::Unknown;
    verdict.reason = answer.reason.empty() ? "solver returned unknown" : answer.reason;
    finish();
    return verdict;
  }

  verdict.kind = Verdict::Kind::Conflict;
  auto sigma = concretize(answer.model, kinds);
  auto outcome = replay(programs, sigma, options, verdict);
  if (outcome != Replay::Confirmed && options.witness_unroll > 0) {
    try {
      if (auto bounded = bounded_witness(programs, kinds, options, solver)) {
        Verdict second;
        if (replay(programs, *bounded, options, second) == Replay::Confirmed) {
          sigma = *bounded;
          outcome = Replay::Confirmed;
          verdict.finals = second.finals;
          verdict.violation = second.violation;
        }
      }
    } catch (const ProductTooLarge&) {
    } catch (const BudgetExceeded&) {
    }
  }
  verdict.witness = sigma;
  verdict.confirmed = outcome == Replay::Confirmed;
  if (outcome == Replay::OutOfFuel)
    verdict.reason = "potential conflict: replay ran out of fuel";
  else if (outcome == Replay::NoViolation)
    verdict.reason = "potential conflict: replay does not violate conflict freedom";
  finish();
  return verdict;
}

Verdict verify_programs(const std::array<StmtPtr, 4>& programs, const VerifyOptions& options,
                        SolverSession& solver) {
  if (options.mode == VerifyMode::FullProduct) {
    std::vector<Edit> edits;
    for (const auto& p : programs) edits.push_back({p});
    return verify(hole(), edits, options, solver);
  }
  auto d = ndiff(programs);
  return verify(d.shared, d.edits, options, solver);
}

}  // namespace mergeguard
