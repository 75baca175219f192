// One PASS/FAIL line per acceptance criterion.

#include "properties.hpp"

#include "cli.hpp"
#include "mergeguard/ndiff.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace mergeguard;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failed = 0;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failed;
}

// Runs one criterion; an exception counts as a failure.
void criterion(int n, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(n, ok, detail);
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

std::array<std::string, 4> paths(const std::string& fixture) {
  auto d = testkit::fixture_dir(fixture);
  return {d + "/base.imp", d + "/a.imp", d + "/b.imp", d + "/merge.imp"};
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool has(const LoopInvariant& inv, const std::string& a, const std::string& b) {
  for (const auto& e : inv.conjuncts)
    if ((e.lhs == a && e.rhs == b) || (e.lhs == b && e.rhs == a)) return true;
  return false;
}

}  // namespace

int main() {
  if (!testkit::solver_available()) {
    std::printf("no SMT solver found; set MERGEGUARD_SOLVER\n");
    return 1;
  }
  cli::Options opts;

  criterion(1, [&] {
    auto t0 = Clock::now();
    auto out = cli::cmd_verify(paths("double-increment"), opts);
    double s = since(t0);
    bool ok = out.exit_code == cli::kConflict && out.json.value("confirmed", false) && s < 5.0;
    return std::pair{ok, "verdict " + out.json.value("verdict", std::string("?")) +
                             ", confirmed " + (out.json.value("confirmed", false) ? "yes" : "no") +
                             ", " + fmt("%.2f s", s)};
  });

  criterion(2, [&] {
    auto f = testkit::load_fixture("branch-rewrite");
    auto d = ndiff(f.versions);
    bool disagree = false;
    for (std::size_t h = 0; h < d.edits[1].size(); ++h)
      if (!stmt_equal(d.edits[1][h], d.edits[2][h])) disagree = true;
    auto out = cli::cmd_verify(paths("branch-rewrite"), opts);
    bool ok = out.exit_code == cli::kVerified && disagree;
    return std::pair{ok, "verdict " + out.json.value("verdict", std::string("?")) +
                             ", hole-level disagreement " + (disagree ? "yes" : "no")};
  });

  criterion(3, [&] {
    auto p = paths("branch-edits");
    auto out = cli::cmd_diff({p.begin(), p.end()}, opts);
    using V = std::vector<std::string>;
    const V expected[] = {{"x := 1", "y := 2", "z := 3"},
                          {"x := 2", "y := 2", "skip"},
                          {"x := 1", "y := 3", "z := 3"},
                          {"x := 2", "y := 3", "skip"}};
    bool edits_ok = out.json["holes"] == 3 && out.json["edits"].size() == 4;
    for (int i = 0; edits_ok && i < 4; ++i)
      edits_ok = out.json["edits"][i]["edit"].get<V>() == expected[i];
    auto rec = testkit::check_reconstruction(77, 200);
    bool ok = edits_ok && rec.failures == 0;
    return std::pair{ok, std::string("edits ") + (edits_ok ? "exact" : "differ") + ", holes " +
                             out.json["holes"].dump() + ", reconstruction failures " +
                             std::to_string(rec.failures) + "/" + std::to_string(rec.cases)};
  });

  criterion(4, [&] {
    auto f = testkit::load_fixture("queue-drain");
    SolverSession solver;
    VerifyOptions o;
    o.cf.check_vars = f.check_vars;
    auto v = verify_programs(f.versions, o, solver);
    bool eqs = false;
    for (const auto& inv : v.diagnostics.invariants)
      if (has(inv, "time#1", "time#3") && has(inv, "time#2", "time#4") &&
          has(inv, "value#1", "value#2") && has(inv, "value#3", "value#4"))
        eqs = true;
    bool ok = v.kind == Verdict::Kind::Verified && eqs;
    return std::pair{ok, "verdict " + to_string(v.kind) + ", invariant equalities " +
                             (eqs ? "present" : "missing")};
  });

  criterion(5, [&] {
    auto t0 = Clock::now();
    auto r = testkit::check_product_equivalence(5000, 500, 20);
    double s = since(t0);
    bool ok = r.inputs == 500 && r.mismatches == 0 && r.compared > 0 && s < 60.0;
    return std::pair{ok, std::to_string(r.compared) + " compared, " +
                             std::to_string(r.fuel_skipped) + " fuel-skipped, " +
                             std::to_string(r.mismatches) + " mismatches, " + fmt("%.1f s", s)};
  });

  criterion(6, [&] {
    auto r = testkit::check_reconstruction(6000, 500);
    bool ok = r.cases == 500 && r.failures == 0 && r.versions_checked == 2000;
    return std::pair{ok, std::to_string(r.versions_checked) + " versions, " +
                             std::to_string(r.failures) + " failures"};
  });

  criterion(7, [&] {
    SolverSession solver;
    auto r = testkit::check_differential_soundness(7000, 200, solver);
    bool ok = r.scenarios == 200 && r.discrepancies == 0;
    std::ostringstream d;
    d << r.verified << " verified, " << r.conflicts << " conflicts (" << r.confirmed
      << " confirmed), " << r.unknown << " unknown, " << r.discrepancies << " discrepancies";
    return std::pair{ok, d.str()};
  });

  criterion(8, [&] {
    const char* names[] = {"B1-kdiff3", "B1-manual", "B2-kdiff3", "B2-manual", "B3-kdiff3",
                           "B4-kdiff3", "B5-kdiff3", "B6-kdiff3", "B6-manual", "B7-kdiff3"};
    bool ok = true;
    double worst = 0;
    std::string bad;
    for (const char* n : names) {
      bool manual = std::string(n).find("manual") != std::string::npos;
      auto t0 = Clock::now();
      auto out = cli::cmd_verify(paths(n), opts);
      double s = since(t0);
      worst = std::max(worst, s);
      int want = manual ? cli::kVerified : cli::kConflict;
      if (out.exit_code != want || s >= 2.0) {
        ok = false;
        bad += std::string(" ") + n;
      }
    }
    return std::pair{ok, "slowest " + fmt("%.2f s", worst) + (bad.empty() ? "" : ", wrong:" + bad)};
  });

  criterion(9, [&] {
    // Runs that end Unknown for lack of resources are charged the full budget.
    const double budget = 60;
    auto dir = fs::temp_directory_path() / "mergeguard-unroll";
    fs::remove_all(dir);
    cli::make_unroll_corpus(dir, {8, 16});
    auto time_of = [&](const std::string& scenario, VerifyMode mode, std::string& note) {
      auto one = fs::temp_directory_path() / "mergeguard-unroll-one";
      fs::remove_all(one);
      fs::create_directories(one);
      fs::copy(dir / scenario, one / scenario, fs::copy_options::recursive);
      cli::Options o;
      o.mode = mode;
      o.budget_s = budget;
      auto out = cli::cmd_bench(one.string(), o);
      const auto& row = out.json["scenarios"][0];
      double ms = row.value("ms", 0.0);
      note = row.value("verdict", std::string("?"));
      if (row.contains("reason")) note += " (" + row["reason"].get<std::string>() + ")";
      fs::remove_all(one);
      return note.rfind("verified", 0) == 0 ? ms / 1000 : budget;
    };
    std::string nc, nf, nn, n32;
    double comp = time_of("unroll-08", VerifyMode::Compositional, nc);
    double full = time_of("unroll-08", VerifyMode::FullProduct, nf);
    double nodep = time_of("unroll-08", VerifyMode::NoDependence, nn);
    double comp32 = time_of("unroll-16", VerifyMode::Compositional, n32);
    fs::remove_all(dir);
    bool ok = full >= 10 * comp && comp < nodep && nodep < full && comp32 < 60 &&
              n32 == "verified";
    std::ostringstream d;
    d << "16 holes: compositional " << fmt("%.3f s", comp) << " [" << nc << "], no-dependence "
      << fmt("%.3f s", nodep) << " [" << nn << "], full-product " << fmt("%.3f s", full) << " ["
      << nf << "]; 32 holes compositional " << fmt("%.3f s", comp32) << " [" << n32 << "]";
    return std::pair{ok, d.str()};
  });

  return failed == 0 ? 0 : 1;
}
