#pragma once

#include "mergeguard/ast.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mergeguard {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string found, std::vector<std::string> expected);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& found() const { return found_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string found_;
  std::vector<std::string> expected_;
};

/// Parses a complete program. Holes are rejected.
StmtPtr parse_program(std::string_view text);

/// Parses a program that may contain `<?HOLE?>` statements.
StmtPtr parse_hprogram(std::string_view text);

ExprPtr parse_expr(std::string_view text);
PredPtr parse_pred(std::string_view text);

}  // namespace mergeguard
