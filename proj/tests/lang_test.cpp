#include "properties.hpp"

#include "mergeguard/generator.hpp"
#include "mergeguard/interpreter.hpp"
#include "mergeguard/parser.hpp"
#include "mergeguard/printer.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mergeguard;

namespace {

StmtPtr P(const char* text) { return parse_program(text); }

Valuation run(const char* text, Valuation sigma, std::uint64_t fuel = 100) {
  auto r = interpret(*P(text), std::move(sigma), fuel);
  EXPECT_FALSE(exhausted(r));
  return std::get<Valuation>(r);
}

}  // namespace

TEST(ApplyEdit, FillsHolesInOrder) {
  auto h = parse_hprogram("if (c > 0) { <?HOLE?> } else { y := 2; } <?HOLE?>");
  StmtPtr edit[] = {P("x := 2;"), skip()};
  auto out = apply_edit(h, edit);
  EXPECT_TRUE(stmt_equal(out, P("if (c > 0) { x := 2; } else { y := 2; } skip;")));
  EXPECT_EQ(num_holes(*out), 0u);
}

TEST(ApplyEdit, NoHolesNoEdit) {
  auto s = P("x := 1; y := x;");
  EXPECT_TRUE(stmt_equal(apply_edit(s, {}), s));
}

TEST(ApplyEdit, ArityMismatchThrows) {
  auto h = parse_hprogram("<?HOLE?> <?HOLE?>");
  StmtPtr one[] = {skip()};
  EXPECT_THROW(apply_edit(h, one), EditArityMismatch);
}

TEST(ApplyEdit, HolePunchingRoundTrip) {
  auto r = testkit::check_hole_punching(7, 300);
  EXPECT_EQ(r.cases, 300);
  EXPECT_EQ(r.failures, 0);
}

TEST(NumHoles, Counts) {
  EXPECT_EQ(num_holes(*hole()), 1u);
  EXPECT_EQ(num_holes(*P("x := 1;")), 0u);
  EXPECT_EQ(num_holes(*parse_hprogram("if (c > 0) { <?HOLE?> } else { <?HOLE?> } <?HOLE?>")), 3u);
}

TEST(Interpreter, BranchExample) {
  Valuation s;
  s.set("x", 0);
  s.set("y", 1);
  s.set("z", 0);
  auto out = run("x := 1; if (y > 0) { z := 1; x := 2; } else { z := 2; }", s);
  EXPECT_EQ(out.get("x"), Value(2));
  EXPECT_EQ(out.get("y"), Value(1));
  EXPECT_EQ(out.get("z"), Value(1));
}

TEST(Interpreter, SkipIsIdentity) {
  Valuation s;
  s.set("x", 4);
  s.set("a", 2, 9);
  EXPECT_EQ(run("skip;", s), s);
}

TEST(Interpreter, NonterminatingLoopRunsOutOfFuel) {
  auto r = interpret(*P("while (0 < 1) { skip; }"), Valuation{}, 10);
  EXPECT_TRUE(exhausted(r));
}

TEST(Interpreter, UninitializedReadIsBottom) {
  auto out = run("y := a[5];", Valuation{});
  EXPECT_EQ(out.get("y"), Value{});
}

TEST(Interpreter, BottomSemantics) {
  Valuation s;
  s.set("x", 1);
  // u and v are never set.
  auto out = run(
      "p := u + 1;"
      "if (u == v) { q := 1; } else { q := 0; }"
      "if (u != v) { r := 1; } else { r := 0; }"
      "if (u < x) { t := 1; } else { t := 0; }"
      "if (u >= x) { w := 1; } else { w := 0; }",
      s);
  EXPECT_EQ(out.get("p"), Value{});
  EXPECT_EQ(out.get("q"), Value(1));
  EXPECT_EQ(out.get("r"), Value(0));
  EXPECT_EQ(out.get("t"), Value(0));
  EXPECT_EQ(out.get("w"), Value(0));
}

TEST(Interpreter, WriteThroughBottomIndexIsDropped) {
  auto out = run("out[u] := 3;", Valuation{});
  EXPECT_TRUE(out.empty());
}

TEST(Interpreter, FuelMonotone) {
  GenOptions g;
  g.arrays = {"a"};
  for (int seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    auto p = gen_program(rng, g);
    Valuation s;
    for (const auto& v : vars(*p)) s.set(v, seed % 5 - 2);
    for (std::uint64_t f = 1; f <= 16; f *= 2) {
      auto a = interpret(*p, s, f);
      if (exhausted(a)) continue;
      for (std::uint64_t g2 : {f + 1, f * 3, f + 1000}) {
        auto b = interpret(*p, s, g2);
        ASSERT_FALSE(exhausted(b));
        EXPECT_EQ(std::get<Valuation>(a), std::get<Valuation>(b)) << pretty_print(p);
      }
      break;
    }
  }
}

TEST(Interpreter, Deterministic) {
  std::mt19937_64 rng(3);
  auto p = gen_program(rng, GenOptions{});
  Valuation s;
  for (const auto& v : vars(*p)) s.set(v, 1);
  EXPECT_EQ(std::get<Valuation>(interpret(*p, s, 1000)), std::get<Valuation>(interpret(*p, s, 1000)));
}

TEST(StmtEqual, Examples) {
  EXPECT_TRUE(stmt_equal(P("x := 1;"), P("x := 1;")));
  EXPECT_TRUE(stmt_equal(P("skip; x := 1;"), P("x := 1;")));
  EXPECT_FALSE(stmt_equal(P("x := 1;"), P("x := 2;")));
}

TEST(VarKinds, ArrayScalarClash) {
  std::map<std::string, VarKind> k;
  EXPECT_THROW(infer_var_kinds(*P("a := 1; a[0] := 2;"), k), TypeError);
}
