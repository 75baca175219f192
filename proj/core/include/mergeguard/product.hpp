#pragma once

#include "mergeguard/ast.hpp"

#include <chrono>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mergeguard {

/// Version tags: 1 = base, 2 = variant A, 3 = variant B, 4 = merge.
inline constexpr int kTagBase = 1;
inline constexpr int kTagA = 2;
inline constexpr int kTagB = 3;
inline constexpr int kTagMerge = 4;

/// `x` under tag 2 is `x#2`.
std::string tagged(std::string_view name, int tag);

/// Splits `x#2` into {"x", 2}; untagged names give tag 0.
std::pair<std::string_view, int> split_tag(std::string_view name);

StmtPtr rename(const StmtPtr& s, int tag);
ExprPtr rename(const ExprPtr& e, int tag);
PredPtr rename(const PredPtr& p, int tag);

/// 1 / (1 + mean pairwise Levenshtein distance) over tag-stripped token sequences.
double similarity(std::span<const StmtPtr> statements);

std::size_t levenshtein(std::span<const std::string> a, std::span<const std::string> b);

class ProductTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an analysis runs past its wall-clock deadline.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProductOptions {
  std::size_t node_limit = 50000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Builds a program equivalent to inputs[0]; inputs[1]; ...; inputs[n-1]
/// that runs loops of different inputs in lockstep where possible.
/// Inputs must use pairwise disjoint variables (std::invalid_argument otherwise).
/// Throws ProductTooLarge once the result exceeds `node_limit` nodes.
StmtPtr construct_product(std::span<const StmtPtr> inputs, const ProductOptions& options = {});

}  // namespace mergeguard
