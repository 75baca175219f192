#include "mergeguard/oracle.hpp"

#include "mergeguard/interpreter.hpp"

#include <random>

namespace mergeguard {

std::string to_string(OracleResult::Kind k) {
  switch (k) {
    case OracleResult::Kind::NoViolation: return "no-violation";
    case OracleResult::Kind::Violation: return "violation";
    case OracleResult::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

EnumSpace EnumSpace::for_scenario(const Scenario& s) {
  std::map<std::string, VarKind> kinds;
  for (const auto& v : s.versions) infer_var_kinds(*v, kinds);
  EnumSpace space;
  for (const auto& [name, kind] : kinds) {
    if (name == kOutVar) continue;
    (kind == VarKind::Array ? space.arrays : space.scalars).push_back(name);
  }
  return space;
}

namespace {

// Positions: one per scalar, one per (array, index in window).
struct Layout {
  std::vector<std::pair<std::string, BigInt>> slots;

  explicit Layout(const EnumSpace& space) {
    for (const auto& v : space.scalars) slots.emplace_back(v, 0);
    for (const auto& a : space.arrays)
      for (BigInt i = space.window_lo; i <= space.window_hi; ++i) slots.emplace_back(a, i);
  }

  Valuation build(const EnumSpace& space, const std::vector<std::size_t>& digits) const {
    Valuation sigma;
    for (std::size_t i = 0; i < slots.size(); ++i)
      sigma.set(slots[i].first, slots[i].second, space.domain[digits[i]]);
    return sigma;
  }
};

}  // namespace

BigInt EnumSpace::size() const {
  Layout layout(*this);
  BigInt n = 1;
  for (std::size_t i = 0; i < layout.slots.size(); ++i) n *= domain.size();
  return n;
}

OracleResult check_input(const Scenario& scenario, const Valuation& sigma, std::uint64_t fuel,
                         const CfCheckOptions& options) {
  OracleResult out;
  out.explored = 1;
  std::array<Valuation, 4> finals;
  for (int i = 0; i < 4; ++i) {
    auto r = interpret(*scenario.versions[i], sigma, fuel);
    if (exhausted(r)) {
      out.kind = OracleResult::Kind::Inconclusive;
      out.exhausted = 1;
      return out;
    }
    finals[i] = std::get<Valuation>(std::move(r));
  }
  if (auto v = find_cf_violation({&finals[0], &finals[1], &finals[2], &finals[3]}, options)) {
    out.kind = OracleResult::Kind::Violation;
    out.sigma = sigma;
    out.violation = std::move(v);
  }
  return out;
}

OracleResult brute_force_cf(const Scenario& scenario, const EnumSpace& space,
                            const CfCheckOptions& options) {
  Layout layout(space);
  OracleResult out;
  const std::size_t base = space.domain.size();
  std::vector<std::size_t> digits(layout.slots.size(), 0);

  auto visit = [&](const Valuation& sigma) {
    auto r = check_input(scenario, sigma, space.fuel, options);
    ++out.explored;
    out.exhausted += r.exhausted;
    if (r.kind == OracleResult::Kind::Violation) {
      out.kind = r.kind;
      out.sigma = std::move(r.sigma);
      out.violation = std::move(r.violation);
      return true;
    }
    return false;
  };

  if (space.size() > space.max_points) {
    out.sampled = true;
    std::mt19937_64 rng(space.seed);
    std::uniform_int_distribution<std::size_t> pick(0, base - 1);
    for (std::size_t n = 0; n < space.samples; ++n) {
      for (auto& d : digits) d = pick(rng);
      if (visit(layout.build(space, digits))) return out;
    }
  } else {
    while (true) {
      if (visit(layout.build(space, digits))) return out;
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == base) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  if (out.exhausted > 0) out.kind = OracleResult::Kind::Inconclusive;
  return out;
}

}  // namespace mergeguard
