#include "cli.hpp"

#include "mergeguard/ndiff.hpp"
#include "mergeguard/parser.hpp"
#include "mergeguard/printer.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef MERGEGUARD_VERSION
#define MERGEGUARD_VERSION "0.0.0"
#endif

namespace mergeguard::cli {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Output error_output(int code, const std::string& message) {
  Output out;
  out.exit_code = code;
  out.json = {{"error", message}};
  out.text = "error: " + message + "\n";
  return out;
}

std::array<StmtPtr, 4> load_four(const std::array<std::string, 4>& paths) {
  std::array<StmtPtr, 4> programs;
  for (int i = 0; i < 4; ++i) programs[i] = load_program(paths[i]);
  return programs;
}

int exit_code_for(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Verified: return kVerified;
    case Verdict::Kind::Conflict: return kConflict;
    case Verdict::Kind::Unknown: return kUnknown;
  }
  return kUnknown;
}

VerifyOptions verify_options(const Options& o) {
  VerifyOptions v;
  v.mode = o.mode;
  v.cf.check_vars = o.check_vars;
  v.cf.global_otherwise = o.global_otherwise;
  v.product.node_limit = o.node_limit;
  if (o.budget_s > 0)
    v.product.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                            std::chrono::duration<double>(o.budget_s));
  return v;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig c;
  c.binary = o.solver;
  c.timeout = std::chrono::milliseconds(static_cast<long long>(o.timeout_s * 1000));
  return c;
}

struct Timed {
  Verdict verdict;
  double diff_seconds = 0;
};

Timed run_verify(const std::array<StmtPtr, 4>& programs, const Options& options,
                 SolverSession& session) {
  auto vo = verify_options(options);
  Timed t;
  if (options.mode == VerifyMode::FullProduct) {
    t.verdict = verify_programs(programs, vo, session);
    return t;
  }
  auto start = Clock::now();
  auto d = ndiff(programs);
  t.diff_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  t.verdict = verify(d.shared, d.edits, vo, session);
  t.verdict.diagnostics.seconds += t.diff_seconds;
  return t;
}

std::string edit_entry(const StmtPtr& s) {
  auto text = pretty_print(s);
  if (is_atom(*s) && !text.empty() && text.back() == ';') text.pop_back();
  return text;
}

std::string edit_text(const Edit& e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? ", " : "") + edit_entry(e[i]);
  return out + "]";
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.find_first_not_of(" \t\r") != std::string::npos) ++n;
  return n;
}

}  // namespace

StmtPtr load_program(const fs::path& path) {
  auto text = read_file(path);
  try {
    return parse_program(text);
  } catch (const ParseError& e) {
    throw InputError(path.string() + ":" + e.what());
  } catch (const TypeError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

VerifyMode parse_mode(const std::string& text) {
  if (text == "compositional") return VerifyMode::Compositional;
  if (text == "full-product" || text == "product") return VerifyMode::FullProduct;
  if (text == "no-dependence") return VerifyMode::NoDependence;
  throw InputError("unknown mode '" + text + "'");
}

Output cmd_verify(const std::array<std::string, 4>& paths, const Options& options) {
  std::array<StmtPtr, 4> programs;
  try {
    programs = load_four(paths);
  } catch (const InputError& e) {
    return error_output(kUsage, e.what());
  }
  try {
    SolverSession session(solver_config(options));
    auto t = run_verify(programs, options, session);
    Output out;
    out.exit_code = exit_code_for(t.verdict.kind);
    out.json = verdict_json(t.verdict, options);
    if (options.timings) {
      out.json["timings_ms"]["diff"] = std::llround(t.diff_seconds * 1000);
      out.json["versions"] = {{"tool", MERGEGUARD_VERSION}, {"solver", session.version()}};
    }
    out.text = verdict_text(t.verdict, options);
    return out;
  } catch (const SolverError& e) {
    return error_output(kSolverError, e.what());
  } catch (const TypeError& e) {
    return error_output(kUsage, e.what());
  }
}

Output cmd_diff(const std::vector<std::string>& paths, const Options&) {
  if (paths.size() < 2) return error_output(kUsage, "diff needs at least two files");
  std::vector<StmtPtr> programs;
  try {
    for (const auto& p : paths) programs.push_back(load_program(p));
  } catch (const InputError& e) {
    return error_output(kUsage, e.what());
  }
  auto d = ndiff(programs);
  Output out;
  out.json["shared"] = pretty_print(d.shared);
  out.json["holes"] = num_holes(*d.shared);
  auto edits = nlohmann::json::array();
  std::ostringstream text;
  text << "shared:\n" << pretty_print_block(d.shared) << "holes: " << num_holes(*d.shared) << "\n";
  for (std::size_t i = 0; i < d.edits.size(); ++i) {
    auto entries = nlohmann::json::array();
    for (const auto& s : d.edits[i]) entries.push_back(edit_entry(s));
    edits.push_back({{"file", paths[i]}, {"edit", entries}});
    text << "edit " << i + 1 << " (" << fs::path(paths[i]).filename().string()
         << "): " << edit_text(d.edits[i]) << "\n";
  }
  out.json["edits"] = edits;
  out.text = text.str();
  return out;
}

Output cmd_product(const std::vector<std::string>& paths, const Options& options) {
  if (paths.empty()) return error_output(kUsage, "product needs at least one file");
  std::vector<StmtPtr> programs;
  try {
    for (std::size_t i = 0; i < paths.size(); ++i)
      programs.push_back(rename(load_program(paths[i]), static_cast<int>(i) + 1));
  } catch (const InputError& e) {
    return error_output(kUsage, e.what());
  }
  ProductOptions po;
  po.node_limit = options.node_limit;
  try {
    auto p = construct_product(programs, po);
    Output out;
    out.json = {{"product", pretty_print(p)}, {"nodes", node_count(*p)}};
    out.text = pretty_print_block(p);
    return out;
  } catch (const ProductTooLarge& e) {
    return error_output(kUnknown, e.what());
  }
}

Output cmd_oracle(const std::array<std::string, 4>& paths, const Options&,
                  const EnumSpace& bounds) {
  Scenario sc;
  try {
    sc.versions = load_four(paths);
  } catch (const InputError& e) {
    return error_output(kUsage, e.what());
  }
  auto space = EnumSpace::for_scenario(sc);
  space.domain = bounds.domain;
  space.window_lo = bounds.window_lo;
  space.window_hi = bounds.window_hi;
  space.fuel = bounds.fuel;
  space.max_points = bounds.max_points;
  space.samples = bounds.samples;
  space.seed = bounds.seed;
  auto r = brute_force_cf(sc, space);

  Output out;
  out.json = {{"result", to_string(r.kind)},
              {"explored", r.explored},
              {"exhausted", r.exhausted},
              {"sampled", r.sampled},
              {"space", space.size().str()}};
  std::ostringstream text;
  text << "result: " << to_string(r.kind) << "\n"
       << "explored: " << r.explored << " of " << space.size() << (r.sampled ? " (sampled)" : "")
       << "\n";
  if (r.exhausted) text << "fuel exhausted: " << r.exhausted << "\n";
  if (r.sigma) {
    out.json["sigma"] = valuation_json(*r.sigma);
    text << "input: " << to_string(*r.sigma) << "\n";
  }
  if (r.violation) {
    out.json["violation"] = to_string(*r.violation);
    text << "violation: " << to_string(*r.violation) << "\n";
  }
  out.text = text.str();
  switch (r.kind) {
    case OracleResult::Kind::NoViolation: out.exit_code = 0; break;
    case OracleResult::Kind::Violation: out.exit_code = 1; break;
    case OracleResult::Kind::Inconclusive: out.exit_code = 2; break;
  }
  return out;
}

Output cmd_bench(const std::string& corpus, const Options& options) {
  if (!fs::is_directory(corpus)) return error_output(kUsage, corpus + ": not a directory");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(corpus))
    if (entry.is_directory() && fs::exists(entry.path() / "base.imp")) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());

  Output out;
  out.json["mode"] = to_string(options.mode);
  auto rows = nlohmann::json::array();
  std::ostringstream text;
  text << std::left << std::setw(28) << "scenario" << std::right << std::setw(6) << "holes"
       << std::setw(7) << "lines" << "  " << std::left << std::setw(10) << "verdict"
       << std::setw(10) << "expect";
  if (options.timings) text << std::right << std::setw(10) << "ms";
  text << "\n";

  bool mismatch = false;
  for (const auto& dir : dirs) {
    const auto name = dir.filename().string();
    nlohmann::json row{{"scenario", name}};
    std::string expect;
    if (fs::exists(dir / "expect")) {
      auto e = split_list(read_file(dir / "expect"));
      if (!e.empty()) expect = e[0];
    }
    Options local = options;
    if (fs::exists(dir / "check-vars")) local.check_vars = split_list(read_file(dir / "check-vars"));

    std::string verdict;
    std::size_t holes = 0, lines = 0;
    double seconds = 0;
    try {
      std::array<std::string, 4> paths{(dir / "base.imp").string(), (dir / "a.imp").string(),
                                       (dir / "b.imp").string(), (dir / "merge.imp").string()};
      auto programs = load_four(paths);
      lines = count_lines(read_file(paths[0]));
      // A fresh solver per scenario keeps earlier queries from slowing later ones.
      SolverSession session(solver_config(options));
      auto t = run_verify(programs, local, session);
      verdict = to_string(t.verdict.kind);
      if (t.verdict.kind == Verdict::Kind::Conflict) row["confirmed"] = t.verdict.confirmed;
      if (!t.verdict.reason.empty()) row["reason"] = t.verdict.reason;
      holes = t.verdict.diagnostics.holes;
      seconds = t.verdict.diagnostics.seconds;
      row["solver_queries"] = t.verdict.diagnostics.solver.queries;
    } catch (const InputError& e) {
      verdict = "error";
      row["error"] = e.what();
    } catch (const SolverError& e) {
      verdict = "error";
      row["error"] = e.what();
    }
    row["verdict"] = verdict;
    row["holes"] = holes;
    row["lines"] = lines;
    if (!expect.empty()) {
      row["expect"] = expect;
      if (expect != verdict) mismatch = true;
    }
    if (options.timings) row["ms"] = seconds * 1000;
    rows.push_back(row);

    text << std::left << std::setw(28) << name << std::right << std::setw(6) << holes
         << std::setw(7) << lines << "  " << std::left << std::setw(10) << verdict << std::setw(10)
         << (expect.empty() ? "-" : expect);
    if (options.timings) text << std::right << std::setw(10) << std::fixed << std::setprecision(1)
                              << seconds * 1000;
    text << "\n";
  }
  out.json["scenarios"] = rows;
  out.text = text.str();
  out.exit_code = mismatch ? 1 : 0;
  return out;
}

}  // namespace mergeguard::cli
