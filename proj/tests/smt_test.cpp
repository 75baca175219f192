#include "properties.hpp"

#include "mergeguard/formula.hpp"
#include "mergeguard/smt.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mergeguard;
using namespace mergeguard::term;

namespace {

TermPtr I(const char* name) { return constant(name, Sort::Int); }

class Smt : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!testkit::solver_available()) GTEST_SKIP() << "no SMT solver";
  }
};

// Random linear formulas over a few integers, one array and one function.
struct FormulaGen {
  std::mt19937_64 rng;
  explicit FormulaGen(std::uint64_t seed) : rng(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  TermPtr arith(int depth) {
    static const char* names[] = {"x", "y", "z"};
    if (depth == 0 || pick(0, 3) == 0)
      return pick(0, 1) ? I(names[pick(0, 2)]) : int_lit(pick(-3, 3));
    switch (pick(0, 4)) {
      case 0: return add(arith(depth - 1), arith(depth - 1));
      case 1: return sub(arith(depth - 1), arith(depth - 1));
      case 2: return mul(int_lit(pick(-2, 2)), arith(depth - 1));
      case 3: return select(array(depth - 1), arith(depth - 1));
      default: return apply("f", {arith(depth - 1)}, Sort::Int);
    }
  }

  TermPtr array(int depth) {
    auto a = constant("a", Sort::Array);
    if (depth == 0 || pick(0, 1)) return a;
    return store(array(depth - 1), arith(depth - 1), arith(depth - 1));
  }

  TermPtr boolean(int depth) {
    if (depth == 0 || pick(0, 2) == 0) {
      switch (pick(0, 4)) {
        case 0: return eq(arith(2), arith(2));
        case 1: return lt(arith(2), arith(2));
        case 2: return le(arith(2), arith(2));
        case 3: return ge(arith(2), arith(2));
        default: return gt(arith(2), arith(2));
      }
    }
    switch (pick(0, 4)) {
      case 0: return conj({boolean(depth - 1), boolean(depth - 1)});
      case 1: return disj({boolean(depth - 1), boolean(depth - 1)});
      case 2: return neg(boolean(depth - 1));
      case 3: return implies(boolean(depth - 1), boolean(depth - 1));
      default: return ite(boolean(depth - 1), boolean(depth - 1), boolean(depth - 1));
    }
  }
};

}  // namespace

TEST_F(Smt, Symmetry) {
  SolverSession s;
  EXPECT_TRUE(s.check_entailment(eq(I("x"), I("y")), eq(I("y"), I("x"))).valid());
}

TEST_F(Smt, InvalidWithModel) {
  SolverSession s;
  auto a = s.check_entailment(eq(I("x"), I("y")), eq(I("x"), I("z")));
  ASSERT_TRUE(a.invalid());
  ASSERT_TRUE(a.model.values.count("x"));
  ASSERT_TRUE(a.model.values.count("z"));
  EXPECT_NE(a.model.values.at("x"), a.model.values.at("z"));
}

TEST_F(Smt, Congruence) {
  SolverSession s;
  auto fa = apply("F", {I("a")}, Sort::Int), fb = apply("F", {I("b")}, Sort::Int);
  EXPECT_TRUE(s.check_entailment(eq(I("a"), I("b")), eq(fa, fb)).valid());
}

TEST_F(Smt, QuantifiedArrayGoal) {
  SolverSession s;
  auto a = constant("a", Sort::Array), b = constant("b", Sort::Array);
  auto k = bound("k");
  auto goal = forall("k", eq(select(a, k), select(b, k)));
  EXPECT_TRUE(s.check_entailment(eq(b, store(a, int_lit(0), select(a, int_lit(0)))), goal).valid());
  EXPECT_TRUE(s.check_entailment(eq(b, store(a, int_lit(0), int_lit(1))), goal).invalid());
}

TEST_F(Smt, FrameDepthRestored) {
  SolverSession s;
  for (int i = 0; i < 5; ++i) {
    s.check_entailment(eq(I("x"), int_lit(i)), gt(I("x"), int_lit(2)));
    EXPECT_EQ(s.frame_depth(), 0);
  }
  EXPECT_EQ(s.stats().queries, 5u);
}

TEST_F(Smt, RandomFormulasAccepted) {
  SolverSession s;
  FormulaGen g(42);
  for (int i = 0; i < 500; ++i) {
    auto hyp = g.boolean(3), goal = g.boolean(3);
    SolverAnswer a;
    ASSERT_NO_THROW(a = s.check_entailment(hyp, goal)) << to_smtlib(hyp) << " |= " << to_smtlib(goal);
    EXPECT_EQ(a.reason.find("error"), std::string::npos) << a.reason;
    EXPECT_EQ(s.frame_depth(), 0);
  }
}

TEST(Emission, DeclaresAndAsserts) {
  auto q = emit_query({eq(I("x#1@0"), I("x#2@0"))}, bool_lit(false));
  EXPECT_NE(q.find("(declare-const |x#1@0| Int)"), std::string::npos) << q;
  EXPECT_NE(q.find("(declare-const |x#2@0| Int)"), std::string::npos) << q;
  EXPECT_NE(q.find("(assert (= |x#1@0| |x#2@0|))"), std::string::npos) << q;
}

TEST(Emission, ArrayTheory) {
  auto a = constant("a", Sort::Array);
  EXPECT_EQ(to_smtlib(select(a, I("i"))), "(select |a| |i|)");
  EXPECT_EQ(to_smtlib(store(a, I("i"), I("v"))), "(store |a| |i| |v|)");
}

TEST(Emission, Deterministic) {
  FormulaGen g1(9), g2(9);
  for (int i = 0; i < 100; ++i) {
    auto a = g1.boolean(3), b = g2.boolean(3);
    EXPECT_EQ(emit_query({a}, b), emit_query({a}, b));
    EXPECT_EQ(emit_smtlib(a), emit_smtlib(b));
  }
}

TEST(Emission, LogicChoice) {
  auto k = bound("k");
  auto a = constant("a", Sort::Array);
  EXPECT_EQ(logic_for({eq(I("x"), I("y"))}), "QF_AUFLIA");
  EXPECT_EQ(logic_for({forall("k", eq(select(a, k), int_lit(0)))}), "AUFLIA");
}

TEST(Concretize, Scalars) {
  Model m;
  m.values["x@0"] = 3;
  auto s = concretize(m, {{"x", VarKind::Scalar}});
  EXPECT_EQ(s.get("x"), Value(3));
}

TEST(Concretize, EmptyModelIsZero) {
  auto s = concretize(Model{}, {{"x", VarKind::Scalar}, {"y", VarKind::Scalar}});
  EXPECT_EQ(s.get("x"), Value(0));
  EXPECT_EQ(s.get("y"), Value(0));
}

TEST(Concretize, Arrays) {
  Model m;
  m.arrays["a@0"][2] = 7;
  m.arrays["a@0"][0] = -1;
  auto s = concretize(m, {{"a", VarKind::Array}});
  EXPECT_EQ(s.get("a", 2), Value(7));
  EXPECT_EQ(s.get("a", 0), Value(-1));
  EXPECT_EQ(s.get("a", 1), Value{});
}
