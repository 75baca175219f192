#pragma once

#include "mergeguard/ast.hpp"

#include <string>
#include <vector>

namespace mergeguard {

/// Canonical single-line rendering; holes print as `<?HOLE?>`.
std::string pretty_print(const StmtPtr& s);

/// Multi-line rendering with `indent` spaces per nesting level.
std::string pretty_print_block(const StmtPtr& s, int indent = 2);

std::string to_string(const Expr& e);
std::string to_string(const Pred& p);

/// Canonical token sequence of `s`. With `strip_tags`, `x#2` becomes `x`.
std::vector<std::string> tokens(const StmtPtr& s, bool strip_tags = false);

}  // namespace mergeguard
