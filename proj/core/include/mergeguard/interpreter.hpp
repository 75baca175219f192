#pragma once

#include "mergeguard/ast.hpp"

#include <cstdint>
#include <variant>

namespace mergeguard {

struct FuelExhausted {
  std::uint64_t fuel = 0;
};

using RunResult = std::variant<Valuation, FuelExhausted>;

/// Big-step semantics over unbounded integers with bottom propagation.
/// Arithmetic on bottom yields bottom. A comparison with exactly one bottom
/// operand is false; bottom == bottom holds and every other comparison of
/// two bottoms is false. Writes through a bottom index are dropped.
/// `fuel` bounds the total number of loop iterations.
RunResult interpret(const Stmt& s, Valuation input, std::uint64_t fuel);

Value eval(const Expr& e, const Valuation& sigma);
bool eval(const Pred& p, const Valuation& sigma);

inline bool exhausted(const RunResult& r) { return std::holds_alternative<FuelExhausted>(r); }

}  // namespace mergeguard
