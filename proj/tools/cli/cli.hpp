#pragma once

#include "mergeguard/oracle.hpp"
#include "mergeguard/verifier.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mergeguard::cli {

enum ExitCode : int {
  kVerified = 0,
  kConflict = 1,
  kUnknown = 2,
  kUsage = 3,
  kSolverError = 4,
};

struct Options {
  std::string solver;
  double timeout_s = 10;
  std::vector<std::string> check_vars;
  bool global_otherwise = false;
  VerifyMode mode = VerifyMode::Compositional;
  std::string report = "text";  // or "json"
  std::uint64_t seed = 1;
  bool timings = true;
  std::size_t node_limit = 50000;
  double budget_s = 0;  // wall-clock budget per verification, 0 = none
};

struct Output {
  int exit_code = 0;
  nlohmann::json json;
  std::string text;
};

/// Failure reading or parsing an input file; maps to exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

StmtPtr load_program(const std::filesystem::path& path);
std::vector<std::string> split_list(const std::string& text);
VerifyMode parse_mode(const std::string& text);

Output cmd_verify(const std::array<std::string, 4>& paths, const Options& options);
Output cmd_diff(const std::vector<std::string>& paths, const Options& options);
Output cmd_product(const std::vector<std::string>& paths, const Options& options);
Output cmd_oracle(const std::array<std::string, 4>& paths, const Options& options,
                  const EnumSpace& bounds);
Output cmd_bench(const std::string& corpus, const Options& options);

/// Writes the loop-unrolling corpus: one scenario per unroll count.
void make_unroll_corpus(const std::filesystem::path& dir, const std::vector<int>& unrolls);

/// Base, variants and merge of the unrolling benchmark with `n` unrolled iterations.
std::array<std::string, 4> unroll_scenario(int n);

// Report rendering.
nlohmann::json verdict_json(const Verdict& v, const Options& options);
std::string verdict_text(const Verdict& v, const Options& options);
nlohmann::json valuation_json(const Valuation& v);

/// Parses arguments and runs a subcommand; returns the exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mergeguard::cli
