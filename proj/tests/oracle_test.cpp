#include "properties.hpp"

#include "mergeguard/generator.hpp"
#include "mergeguard/ndiff.hpp"
#include "mergeguard/parser.hpp"
#include "mergeguard/printer.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace mergeguard;

namespace {

StmtPtr P(const char* text) { return parse_program(text); }

Scenario scenario_of(const testkit::Fixture& f) { return Scenario{f.versions}; }

}  // namespace

TEST(Oracle, DoubleIncrementViolates) {
  auto sc = scenario_of(testkit::load_fixture("double-increment"));
  auto space = EnumSpace::for_scenario(sc);
  space.domain = {0, 1};
  auto r = brute_force_cf(sc, space);
  EXPECT_EQ(r.kind, OracleResult::Kind::Violation);
  ASSERT_TRUE(r.sigma);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(r.violation->var, "out");
}

TEST(Oracle, EquivalentRewritesHold) {
  auto sc = scenario_of(testkit::load_fixture("branch-rewrite"));
  auto r = brute_force_cf(sc, EnumSpace::for_scenario(sc));
  EXPECT_EQ(r.kind, OracleResult::Kind::NoViolation);
  EXPECT_FALSE(r.sampled);
  EXPECT_GT(r.explored, 0u);
}

TEST(Oracle, IdenticalVersionsHold) {
  auto s = P("y := x + 1; if (y > 0) { out[0] := y; } else { out[1] := x; }");
  Scenario sc{{s, s, s, s}};
  EXPECT_EQ(brute_force_cf(sc, EnumSpace::for_scenario(sc)).kind, OracleResult::Kind::NoViolation);
}

TEST(Oracle, SpaceSize) {
  Scenario sc{{P("y := x;"), P("y := x;"), P("y := x;"), P("y := x;")}};
  auto space = EnumSpace::for_scenario(sc);
  EXPECT_EQ(space.scalars, std::vector<std::string>({"x", "y"}));
  EXPECT_EQ(space.size(), BigInt(25));
}

TEST(Oracle, FuelExhaustionIsInconclusive) {
  auto loop = P("while (0 < 1) { x := x + 1; }");
  Scenario sc{{loop, loop, loop, loop}};
  auto space = EnumSpace::for_scenario(sc);
  space.fuel = 5;
  auto r = brute_force_cf(sc, space);
  EXPECT_EQ(r.kind, OracleResult::Kind::Inconclusive);
  EXPECT_EQ(r.exhausted, r.explored);
}

TEST(Oracle, SamplingLargeSpaces) {
  Scenario sc{{P("y := x + z + w;"), P("y := x + z + w;"), P("y := x + z + w;"), P("y := x + z + w;")}};
  auto space = EnumSpace::for_scenario(sc);
  space.max_points = 10;
  space.samples = 50;
  auto r = brute_force_cf(sc, space);
  EXPECT_TRUE(r.sampled);
  EXPECT_EQ(r.explored, 50u);
}

TEST(Generator, Deterministic) {
  GenOptions o;
  for (std::uint64_t seed : {1u, 7u, 123u}) {
    std::mt19937_64 r1(seed), r2(seed);
    auto a = gen_scenario(r1, o), b = gen_scenario(r2, o);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(stmt_equal(a.versions[i], b.versions[i]));
  }
}

TEST(Generator, SeedsGiveDistinctScenarios) {
  GenOptions o;
  std::set<std::string> seen;
  int with_holes = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::mt19937_64 rng(seed);
    auto sc = gen_scenario(rng, o);
    std::string key;
    for (const auto& v : sc.versions) key += pretty_print(v) + "|";
    seen.insert(key);
    if (num_holes(*ndiff(sc.versions).shared) >= 1) ++with_holes;
  }
  EXPECT_GE(seen.size(), 450u);
  EXPECT_GE(with_holes, 450);
}

TEST(Generator, ProgramsTerminate) {
  GenOptions o;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Scenario sc = gen_scenario(rng, o);
    auto r = check_input(sc, Valuation{}, 10000);
    EXPECT_EQ(r.exhausted, 0u) << pretty_print(sc.versions[0]);
  }
}

TEST(Generator, DuplicationClassAppears) {
  // Some mutation copies a statement next to itself.
  GenOptions o;
  o.loops = false;
  std::mt19937_64 rng(11);
  bool found = false;
  for (int i = 0; i < 2000 && !found; ++i) {
    auto base = gen_program(rng, o);
    auto m = mutate(rng, base, o);
    auto atoms = flatten(m);
    auto before = flatten(base);
    if (atoms.size() != before.size() + 1) continue;
    for (std::size_t k = 1; k < atoms.size(); ++k)
      if (stmt_equal(atoms[k - 1], atoms[k])) found = true;
  }
  EXPECT_TRUE(found);
}
