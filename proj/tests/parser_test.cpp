#include "mergeguard/generator.hpp"
#include "mergeguard/parser.hpp"
#include "mergeguard/printer.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mergeguard;

TEST(Parser, Increment) {
  auto s = parse_program("x := x + 1;");
  ASSERT_EQ(s->kind, Stmt::Kind::Assign);
  EXPECT_EQ(s->target, "x");
  ASSERT_EQ(s->rhs->kind, Expr::Kind::BinOp);
  EXPECT_EQ(s->rhs->op, ArithOp::Add);
  EXPECT_EQ(s->rhs->args[0]->kind, Expr::Kind::Var);
  EXPECT_EQ(s->rhs->args[0]->name, "x");
  EXPECT_EQ(s->rhs->args[1]->kind, Expr::Kind::IntConst);
  EXPECT_EQ(s->rhs->args[1]->value, 1);
}

TEST(Parser, BranchThenOutput) {
  auto s = parse_program("if (x > 0) { y := 1; } else { y := 0; } out[0] := y;");
  auto expected = seq(if_stmt(cmp(CmpOp::Gt, var("x"), int_const(0)), assign("y", int_const(1)),
                              assign("y", int_const(0))),
                      array_assign("out", int_const(0), var("y")));
  EXPECT_TRUE(stmt_equal(s, expected));
}

TEST(Parser, DanglingComparison) {
  try {
    parse_program("while (x <");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_GE(e.column(), 10);
  }
}

TEST(Parser, Rejections) {
  EXPECT_THROW(parse_program("if (x > 0) { y := 1; }"), ParseError);
  EXPECT_THROW(parse_program("out := 1;"), ParseError);
  EXPECT_THROW(parse_program("x := 1"), ParseError);
  EXPECT_THROW(parse_program("while := 2;"), ParseError);
  EXPECT_THROW(parse_program("<?HOLE?>"), ParseError);
}

TEST(Parser, CommentsAndPrecedence) {
  auto s = parse_program("// top\nx := 1 + 2 * y; // tail\n");
  EXPECT_TRUE(stmt_equal(
      s, assign("x", bin_op(ArithOp::Add, int_const(1),
                            bin_op(ArithOp::Mul, int_const(2), var("y"))))));
}

TEST(Printer, Skip) { EXPECT_EQ(pretty_print(skip()), "skip;"); }

TEST(Printer, SharedProgramWithHoles) {
  auto h = parse_hprogram("if (c > 0) { <?HOLE?> } else { <?HOLE?> } <?HOLE?>");
  auto text = pretty_print(h);
  EXPECT_NE(text.find("if (c > 0) {"), std::string::npos);
  std::size_t n = 0;
  for (auto p = text.find("<?HOLE?>"); p != std::string::npos; p = text.find("<?HOLE?>", p + 1)) ++n;
  EXPECT_EQ(n, 3u);
  EXPECT_TRUE(stmt_equal(parse_hprogram(text), h));
}

TEST(Printer, RoundTripRandomPrograms) {
  GenOptions g;
  g.arrays = {"a", "b"};
  g.max_depth = 3;
  for (int seed = 0; seed < 500; ++seed) {
    std::mt19937_64 rng(seed);
    auto p = gen_program(rng, g);
    auto text = pretty_print(p);
    EXPECT_TRUE(stmt_equal(parse_program(text), p)) << text;
  }
}

TEST(Parser, TotalOnGarbage) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "xy01:=;+-*()<>!&|{}[] \nifwhlesko";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int i = 0; i < 500; ++i) {
    std::string s;
    for (int j = 0; j < 30; ++j) s += alphabet[pick(rng)];
    try {
      parse_program(s);
    } catch (const ParseError&) {
    }
  }
}
