#include "properties.hpp"

#include "mergeguard/generator.hpp"
#include "mergeguard/interpreter.hpp"
#include "mergeguard/ndiff.hpp"
#include "mergeguard/parser.hpp"
#include "mergeguard/product.hpp"
#include "mergeguard/symexec.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace mergeguard::testkit {

namespace fs = std::filesystem;

std::string fixture_dir(const std::string& name) {
  return (fs::path(MERGEGUARD_FIXTURES) / name).string();
}

namespace {

// The parser rejects '#', so tags travel as "__" and are restored here.
std::string untag(std::string name) {
  auto k = name.rfind("__");
  if (k != std::string::npos) name.replace(k, 2, "#");
  return name;
}

ExprPtr restore(const ExprPtr& e) {
  auto c = std::make_shared<Expr>(*e);
  c->name = untag(c->name);
  for (auto& a : c->args) a = restore(a);
  return c;
}

PredPtr restore(const PredPtr& p) {
  auto c = std::make_shared<Pred>(*p);
  if (c->lhs) c->lhs = restore(c->lhs);
  if (c->rhs) c->rhs = restore(c->rhs);
  for (auto& a : c->args) a = restore(a);
  return c;
}

StmtPtr restore(const StmtPtr& s) {
  auto c = std::make_shared<Stmt>(*s);
  c->target = untag(c->target);
  if (c->index) c->index = restore(c->index);
  if (c->rhs) c->rhs = restore(c->rhs);
  if (c->cond) c->cond = restore(c->cond);
  for (auto& b : c->body) b = restore(b);
  return c;
}

}  // namespace

StmtPtr parse_tagged(const std::string& text) {
  std::string t = text;
  for (std::size_t k = t.find('#'); k != std::string::npos; k = t.find('#', k)) t.replace(k, 1, "__");
  return restore(parse_program(t));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == '\n' || c == ' ' || c == '\r') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

Fixture load_fixture(const std::string& name) {
  Fixture f;
  f.name = name;
  const auto dir = fs::path(fixture_dir(name));
  const char* files[] = {"base.imp", "a.imp", "b.imp", "merge.imp"};
  for (int i = 0; i < 4; ++i) f.versions[i] = parse_program(read_text((dir / files[i]).string()));
  if (fs::exists(dir / "check-vars")) f.check_vars = words(read_text((dir / "check-vars").string()));
  if (fs::exists(dir / "expect")) {
    auto w = words(read_text((dir / "expect").string()));
    if (!w.empty()) f.expect = w[0];
  }
  return f;
}

bool solver_available() {
  try {
    SolverSession s;
    s.version();
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

namespace {

StmtPtr punch(const StmtPtr& s, std::mt19937_64& rng, std::vector<StmtPtr>& edit) {
  std::bernoulli_distribution coin(0.2);
  if (s->kind != Stmt::Kind::Seq && coin(rng)) {
    edit.push_back(s);
    return hole();
  }
  switch (s->kind) {
    case Stmt::Kind::Seq: {
      auto first = punch(s->body[0], rng, edit);
      return seq(first, punch(s->body[1], rng, edit));
    }
    case Stmt::Kind::If: {
      auto t = punch(s->body[0], rng, edit);
      return if_stmt(s->cond, t, punch(s->body[1], rng, edit));
    }
    case Stmt::Kind::While:
      return while_stmt(s->cond, punch(s->body[0], rng, edit));
    default:
      return s;
  }
}

std::vector<std::string> scalar_inputs(const std::array<StmtPtr, 4>& versions) {
  std::map<std::string, VarKind> kinds;
  for (const auto& v : versions) infer_var_kinds(*v, kinds);
  std::vector<std::string> out;
  for (const auto& [name, kind] : kinds)
    if (kind == VarKind::Scalar) out.push_back(name);
  return out;
}

}  // namespace

PunchReport check_hole_punching(std::uint64_t seed, int cases) {
  PunchReport r;
  for (int c = 0; c < cases; ++c) {
    std::mt19937_64 rng(seed + c);
    GenOptions g;
    g.arrays = {"a"};
    auto s = gen_program(rng, g);
    std::vector<StmtPtr> edit;
    auto h = punch(s, rng, edit);
    ++r.cases;
    if (num_holes(*h) != edit.size() || !stmt_equal(apply_edit(h, edit), s)) ++r.failures;
  }
  return r;
}

ReconstructionReport check_reconstruction(std::uint64_t seed, int cases) {
  ReconstructionReport r;
  for (int c = 0; c < cases; ++c) {
    std::mt19937_64 rng(seed + c);
    auto sc = gen_scenario(rng, GenOptions{});
    ++r.cases;
    bool ok = true;
    try {
      auto d = ndiff(sc.versions);
      for (int i = 0; i < 4; ++i) {
        ++r.versions_checked;
        if (d.edits[i].size() != num_holes(*d.shared) ||
            !stmt_equal(apply_edit(d.shared, d.edits[i]), sc.versions[i]))
          ok = false;
      }
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok && r.failures++ == 0) r.first_failing_seed = seed + c;
  }
  return r;
}

ProductReport check_product_equivalence(std::uint64_t seed, int inputs, int valuations) {
  ProductReport r;
  constexpr std::uint64_t kFuel = 10000;
  for (int c = 0; c < inputs; ++c) {
    std::mt19937_64 rng(seed + c);
    GenOptions g;
    g.scalars = {"x", "y", "n"};
    g.arrays = {"a"};
    const int k = std::uniform_int_distribution<int>(2, 4)(rng);
    auto first = gen_program(rng, g);
    std::vector<StmtPtr> renamed;
    std::bernoulli_distribution unrelated(0.25);
    for (int i = 0; i < k; ++i) {
      auto p = i == 0 ? first : unrelated(rng) ? gen_program(rng, g) : mutate(rng, first, g);
      renamed.push_back(rename(p, i + 1));
    }
    ++r.inputs;
    // Branch-heavy inputs reach about a million nodes; the verifier's cap is not under test.
    ProductOptions po;
    po.node_limit = 5'000'000;
    StmtPtr product;
    try {
      product = construct_product(renamed, po);
    } catch (const ProductTooLarge&) {
      ++r.too_large;
      continue;
    }
    auto sequential = seq(renamed);

    std::map<std::string, VarKind> kinds;
    for (const auto& p : renamed) infer_var_kinds(*p, kinds);
    std::uniform_int_distribution<int> value(-3, 3);
    bool failed = false;
    for (int v = 0; v < valuations; ++v) {
      Valuation sigma;
      for (const auto& [name, kind] : kinds) {
        if (split_tag(name).first == kOutVar) continue;
        if (kind == VarKind::Scalar)
          sigma.set(name, value(rng));
        else
          for (int idx = 0; idx < 4; ++idx) sigma.set(name, idx, value(rng));
      }
      ++r.runs;
      auto a = interpret(*product, sigma, kFuel);
      auto b = interpret(*sequential, sigma, kFuel);
      if (exhausted(a) || exhausted(b)) {
        ++r.fuel_skipped;
        continue;
      }
      ++r.compared;
      if (!(std::get<Valuation>(a) == std::get<Valuation>(b))) failed = true;
    }
    if (failed && r.mismatches++ == 0) r.first_failing_seed = seed + c;
  }
  return r;
}

SoundnessReport check_differential_soundness(std::uint64_t seed, int scenarios,
                                             SolverSession& solver) {
  SoundnessReport r;
  for (int c = 0; c < scenarios; ++c) {
    std::mt19937_64 rng(seed + c);
    auto sc = gen_scenario(rng, GenOptions{});
    ++r.scenarios;
    auto verdict = verify_programs(sc.versions, VerifyOptions{}, solver);
    bool bad = false;
    switch (verdict.kind) {
      case Verdict::Kind::Verified: {
        ++r.verified;
        auto o = brute_force_cf(sc, EnumSpace::for_scenario(sc));
        if (o.sampled) ++r.sampled;
        if (o.kind == OracleResult::Kind::Violation) bad = true;
        break;
      }
      case Verdict::Kind::Conflict:
        ++r.conflicts;
        if (verdict.confirmed) {
          ++r.confirmed;
          auto o = check_input(sc, *verdict.witness, VerifyOptions{}.replay_fuel);
          if (o.kind != OracleResult::Kind::Violation) bad = true;
        }
        break;
      case Verdict::Kind::Unknown:
        ++r.unknown;
        break;
    }
    if (bad) {
      ++r.discrepancies;
      r.failing_seeds.push_back(seed + c);
    }
  }
  return r;
}

PostReport check_post_against_runs(std::uint64_t seed, int scenarios, int valuations,
                                   SolverSession& solver) {
  PostReport r;
  constexpr std::uint64_t kFuel = 10000;
  for (int c = 0; c < scenarios; ++c) {
    std::mt19937_64 rng(seed + c);
    auto sc = gen_scenario(rng, GenOptions{});
    ++r.scenarios;
    auto d = ndiff(sc.versions);
    std::map<std::string, VarKind> kinds;
    for (const auto& v : sc.versions) infer_var_kinds(*v, kinds);
    SymEngine engine(solver, kinds, 4);
    auto st = relational_post(engine, d.shared, d.edits, SymState{}, VerifyOptions{}).state;

    const auto inputs = scalar_inputs(sc.versions);
    std::uniform_int_distribution<int> value(-2, 2);
    bool refuted = false;
    for (int v = 0; v < valuations; ++v) {
      Valuation sigma;
      for (const auto& x : inputs) sigma.set(x, value(rng));
      std::array<Valuation, 4> finals;
      bool fuel = false;
      for (int i = 0; i < 4 && !fuel; ++i) {
        auto run = interpret(*sc.versions[i], sigma, kFuel);
        if (exhausted(run))
          fuel = true;
        else
          finals[i] = std::get<Valuation>(std::move(run));
      }
      if (fuel) {
        ++r.fuel_skipped;
        continue;
      }
      ++r.valuations;

      auto hyps = st.facts;
      for (const auto& x : inputs)
        hyps.push_back(term::eq(term::constant(initial_symbol(x), Sort::Int),
                                term::int_lit(*sigma.get(x))));
      for (int i = 0; i < 4; ++i) {
        for (const auto& [key, val] : finals[i].entries()) {
          const auto id = tagged(key.first, i + 1);
          auto now = engine.lookup(st, id);
          if (key.first == kOutVar)
            hyps.push_back(term::eq(term::select(now, term::int_lit(key.second)), term::int_lit(val)));
          else
            hyps.push_back(term::eq(now, term::int_lit(val)));
        }
      }
      auto answer = solver.check_entailment(hyps, term::bool_lit(false));
      if (answer.valid()) refuted = true;
    }
    if (refuted && r.refuted++ == 0) r.first_failing_seed = seed + c;
  }
  return r;
}

}  // namespace mergeguard::testkit
