#include "cli.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace mergeguard::cli {

namespace {

struct Flags {
  Options options;
  std::string mode = "compositional";
  std::string check_vars;
  bool no_timings = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--solver", f.options.solver, "SMT solver binary");
  cmd->add_option("--timeout", f.options.timeout_s, "Per-query solver timeout in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--check-vars", f.check_vars, "Extra variables checked for conflict freedom");
  cmd->add_flag("--global-otherwise", f.options.global_otherwise,
                "Check out with the global (chi1 and chi2) or chi3 form");
  cmd->add_option("--mode", f.mode, "compositional, full-product or no-dependence")
      ->check(CLI::IsMember({"compositional", "full-product", "no-dependence"}));
  cmd->add_option("--report", f.options.report, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--seed", f.options.seed, "Seed for sampling");
  cmd->add_flag("--no-timings", f.no_timings, "Omit timings and versions from reports");
  cmd->add_option("--node-limit", f.options.node_limit, "Largest product program, in nodes");
  cmd->add_option("--budget", f.options.budget_s, "Wall-clock budget per verification, seconds");
}

void finish(Flags& f) {
  f.options.mode = parse_mode(f.mode);
  f.options.check_vars = split_list(f.check_vars);
  f.options.timings = !f.no_timings;
}

int emit(const Output& o, const Options& options, std::ostream& out, std::ostream& err) {
  if (options.report == "json")
    out << o.json.dump(2) << "\n";
  else if (o.json.contains("error") && o.json.size() == 1)
    err << o.text;
  else
    out << o.text;
  return o.exit_code;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic conflict checker for three-way merges", "mergeguard"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MERGEGUARD_VERSION));

  Flags f;
  std::vector<std::string> files;
  std::string corpus;

  auto* verify = app.add_subcommand("verify", "Check that MERGE is conflict free");
  verify->add_option("files", files, "BASE A B MERGE")->required()->expected(4);
  add_common(verify, f);

  auto* diff = app.add_subcommand("diff", "Print the shared program and per-file edits");
  diff->add_option("files", files, "Programs to diff")->required()->expected(2, -1);
  add_common(diff, f);

  auto* product = app.add_subcommand("product", "Print the product of renamed programs");
  product->add_option("files", files, "Programs")->required()->expected(1, -1);
  add_common(product, f);

  EnumSpace bounds;
  long long lo = -2, hi = 2, window = 3;
  auto* oracle = app.add_subcommand("oracle", "Check conflict freedom by enumerating inputs");
  oracle->add_option("files", files, "BASE A B MERGE")->required()->expected(4);
  oracle->add_option("--min", lo, "Smallest input value");
  oracle->add_option("--max", hi, "Largest input value");
  oracle->add_option("--window", window, "Largest array index enumerated");
  oracle->add_option("--samples", bounds.samples, "Samples when the space is too large");
  oracle->add_option("--max-points", bounds.max_points, "Largest space enumerated exhaustively");
  oracle->add_option("--fuel", bounds.fuel, "Loop iteration budget per run");
  add_common(oracle, f);

  auto* bench = app.add_subcommand("bench", "Verify every scenario of a corpus directory");
  bench->add_option("corpus", corpus, "Directory of scenario folders")->required();
  add_common(bench, f);

  std::string unroll_dir, unroll_list = "1,2,4,8,16";
  auto* unroll = app.add_subcommand("make-unroll-corpus", "Write the loop-unrolling corpus");
  unroll->add_option("dir", unroll_dir, "Output directory")->required();
  unroll->add_option("--unrolls", unroll_list, "Comma separated unroll counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << MERGEGUARD_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    finish(f);
    if (*verify)
      return emit(cmd_verify({files[0], files[1], files[2], files[3]}, f.options), f.options, out, err);
    if (*diff) return emit(cmd_diff(files, f.options), f.options, out, err);
    if (*product) return emit(cmd_product(files, f.options), f.options, out, err);
    if (*oracle) {
      bounds.domain.clear();
      for (long long v = lo; v <= hi; ++v) bounds.domain.push_back(v);
      if (bounds.domain.empty()) throw InputError("empty value domain");
      bounds.window_hi = window;
      bounds.seed = f.options.seed;
      return emit(cmd_oracle({files[0], files[1], files[2], files[3]}, f.options, bounds), f.options,
                  out, err);
    }
    if (*bench) return emit(cmd_bench(corpus, f.options), f.options, out, err);
    if (*unroll) {
      std::vector<int> ns;
      for (const auto& s : split_list(unroll_list)) ns.push_back(std::stoi(s));
      make_unroll_corpus(unroll_dir, ns);
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace mergeguard::cli
