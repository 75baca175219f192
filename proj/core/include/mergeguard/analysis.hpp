#pragma once

#include "mergeguard/ast.hpp"

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace mergeguard {

class NotModified : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Variables assigned anywhere in `s`; arrays count as a whole.
std::set<std::string> modifies(const Stmt& s);

struct DepSummary {
  std::set<std::string> modified;
  std::map<std::string, std::set<std::string>> deps;
};

/// Flow and control dependence of every modified variable on the values
/// at entry to `s`. A variable left unassigned on some path depends on itself.
DepSummary summarize_dependencies(const Stmt& s);

/// Throws NotModified if `y` is not assigned in `s`.
std::set<std::string> dependencies(const Stmt& s, const std::string& y);

/// Allocates uninterpreted function names, one per (code fragment, variable).
class UfRegistry {
 public:
  /// `fragment` identifies the summarized code (first statement and length).
  const std::string& symbol(const void* fragment, std::size_t length, const std::string& var);
  std::size_t size() const { return names_.size(); }

 private:
  std::map<std::tuple<const void*, std::size_t, std::string>, std::string> names_;
};

struct SummaryAssign {
  std::string target;              // renamed, e.g. y#2
  std::string fn;                  // F_k, shared across tags
  std::vector<std::string> args;   // renamed pre-state inputs
};

/// Straight-line summary of hole-free code: one assignment per modified
/// variable and tag, all reading pre-state values.
struct SharedSummary {
  std::vector<SummaryAssign> assigns;

  /// Statement form. Arguments are read before any summary assignment, so
  /// the sequence is only faithful when no target feeds a later argument.
  StmtPtr as_stmt() const;
};

SharedSummary summarize_shared(const StmtPtr& s, std::span<const int> tags, UfRegistry& registry);

SharedSummary summarize_fragment(std::span<const StmtPtr> items, std::span<const int> tags,
                                 UfRegistry& registry);

}  // namespace mergeguard
