#include "properties.hpp"

#include "mergeguard/parser.hpp"
#include "mergeguard/printer.hpp"
#include "mergeguard/product.hpp"

#include <gtest/gtest.h>

using namespace mergeguard;

namespace {

StmtPtr P(const char* text) { return parse_program(text); }
StmtPtr T(const char* text) { return testkit::parse_tagged(text); }

}  // namespace

TEST(Rename, Tags) {
  EXPECT_TRUE(stmt_equal(rename(P("x := x + 1;"), 2),
                         assign("x#2", bin_op(ArithOp::Add, var("x#2"), int_const(1)))));
  EXPECT_TRUE(stmt_equal(rename(P("out[0] := y;"), 4),
                         array_assign("out#4", int_const(0), var("y#4"))));
  EXPECT_EQ(rename(skip(), 3)->kind, Stmt::Kind::Skip);
  EXPECT_EQ(tagged("x", 3), "x#3");
  EXPECT_EQ(split_tag("value#4").first, "value");
  EXPECT_EQ(split_tag("value#4").second, 4);
}

TEST(Similarity, Examples) {
  auto s = P("while (i < n) { i := i * x; }");
  StmtPtr same[] = {s, s};
  EXPECT_DOUBLE_EQ(similarity(same), 1.0);

  StmtPtr loops[] = {s, P("while (j < m) { j := j * y; }")};
  StmtPtr mixed[] = {s, P("x := 1;")};
  EXPECT_GT(similarity(loops), similarity(mixed));

  StmtPtr renamed[] = {rename(s, 1), rename(s, 2)};
  EXPECT_DOUBLE_EQ(similarity(renamed), 1.0);
}

TEST(Levenshtein, Basic) {
  std::vector<std::string> a{"a", "b", "c"}, b{"a", "c"}, c{};
  EXPECT_EQ(levenshtein(a, b), 1u);
  EXPECT_EQ(levenshtein(a, c), 3u);
  EXPECT_EQ(levenshtein(a, a), 0u);
}

TEST(Product, LockstepLoops) {
  StmtPtr in[] = {rename(P("i := 0; while (i < n) { i := i * x; }"), 1),
                  rename(P("i := 0; while (i < n) { i := i * x; }"), 2)};
  auto expected = T(
      "i#1 := 0; i#2 := 0;"
      "while (i#1 < n#1 && i#2 < n#2) { i#1 := i#1 * x#1; i#2 := i#2 * x#2; }"
      "if (i#1 < n#1) { while (i#1 < n#1) { i#1 := i#1 * x#1; } }"
      "else { if (i#2 < n#2) { while (i#2 < n#2) { i#2 := i#2 * x#2; } } else { skip; } }");
  auto got = construct_product(in);
  EXPECT_TRUE(stmt_equal(got, expected)) << pretty_print(got);
}

TEST(Product, SingleInput) {
  auto a = rename(P("x := 1; while (x < 3) { x := x + 1; }"), 1);
  StmtPtr in[] = {a};
  EXPECT_TRUE(stmt_equal(construct_product(in), a));
}

TEST(Product, LoopFreeStaysLoopFree) {
  StmtPtr in[] = {rename(P("if (x > 0) { y := 1; } else { y := 2; } z := y;"), 1),
                  rename(P("y := x; z := y + 1;"), 2), rename(P("z := 3;"), 3)};
  auto p = construct_product(in);
  EXPECT_EQ(pretty_print(p).find("while"), std::string::npos);
}

TEST(Product, NodeLimit) {
  StmtPtr in[] = {rename(P("if (x > 0) { y := 1; } else { y := 2; } if (y > 0) { z := 1; } else { z := 2; }"), 1),
                  rename(P("if (x > 0) { y := 1; } else { y := 2; } if (y > 0) { z := 1; } else { z := 2; }"), 2)};
  ProductOptions tiny;
  tiny.node_limit = 10;
  EXPECT_THROW(construct_product(in, tiny), ProductTooLarge);
}

TEST(Product, MatchesSequentialComposition) {
  auto r = testkit::check_product_equivalence(5000, 500, 20);
  EXPECT_EQ(r.inputs, 500);
  EXPECT_EQ(r.too_large, 0);
  EXPECT_EQ(r.mismatches, 0) << "first failing seed " << r.first_failing_seed;
  EXPECT_GT(r.compared, 500 * 20 * 9 / 10);
}
