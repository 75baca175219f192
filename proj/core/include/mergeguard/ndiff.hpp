#pragma once

#include "mergeguard/ast.hpp"

#include <span>
#include <vector>

namespace mergeguard {

using Edit = std::vector<StmtPtr>;

/// Result of a two-way diff between a program `s` and a shared program `h`:
/// `shared` with `edit` gives `s`, with `hedit` gives `h`.
struct Diff2Result {
  StmtPtr shared;
  Edit edit;
  Edit hedit;
};

/// Shared program plus one edit per input program, in input order.
struct DiffResult {
  StmtPtr shared;
  std::vector<Edit> edits;
};

/// Two-way diff using an LCS alignment of top-level statement lists.
/// Equal statements are kept, if/while with equal conditions recurse,
/// everything else becomes a hole.
Diff2Result diff2(const StmtPtr& s, const StmtPtr& h);

/// Rewrites an edit of the old shared program into an edit of the new one,
/// given the hole-edit produced by diff2.
/// Throws EditArityMismatch when `edit.size() != num_holes(hedit)`.
Edit compose(std::span<const StmtPtr> hedit, std::span<const StmtPtr> edit);

/// N-way diff. Requires at least one program.
DiffResult ndiff(std::span<const StmtPtr> programs);

}  // namespace mergeguard
