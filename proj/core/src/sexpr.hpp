#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mergeguard::detail {

struct SExpr {
  bool is_list = false;
  std::string atom;  // symbols lose their |quotes|
  std::vector<SExpr> items;
};

/// Parses the first complete s-expression of `text`; sets `consumed`.
/// Returns nullopt if `text` holds no complete expression yet.
std::optional<SExpr> parse_sexpr(std::string_view text, std::size_t& consumed);

/// True if `text` starts (after whitespace) with a complete s-expression or atom.
bool complete_sexpr(std::string_view text);

}  // namespace mergeguard::detail
