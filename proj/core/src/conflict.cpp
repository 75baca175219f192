#include "mergeguard/conflict.hpp"

#include "mergeguard/ast.hpp"

#include <set>
#include <sstream>

namespace mergeguard {

namespace {

std::set<BigInt> indices_of(const FinalStates& finals, const std::string& var) {
  std::set<BigInt> out;
  for (const auto* s : finals)
    for (const auto& [key, value] : s->entries())
      if (key.first == var) out.insert(key.second);
  return out;
}

std::array<Value, 4> values_at(const FinalStates& finals, const std::string& var,
                               const BigInt& k) {
  return {finals[0]->get(var, k), finals[1]->get(var, k), finals[2]->get(var, k),
          finals[3]->get(var, k)};
}

// Returns the name of the first violated clause, or empty.
std::string out_clause(const std::array<Value, 4>& v) {
  if (v[0] != v[1] && v[3] != v[1]) return "base != A but merge != A";
  if (v[0] != v[2] && v[3] != v[2]) return "base != B but merge != B";
  if (v[0] == v[1] && v[0] == v[2] && v[3] != v[0]) return "base == A == B but merge != base";
  return {};
}

std::string var_clause(const std::array<Value, 4>& v) {
  if (v[0] == v[1] && v[0] == v[2] && v[0] == v[3]) return {};
  if (v[0] != v[1] && v[1] != v[3]) return "base != A but merge != A";
  if (v[0] != v[2] && v[2] != v[3]) return "base != B but merge != B";
  return {};
}

}  // namespace

std::optional<CfViolation> find_cf_violation(const FinalStates& finals,
                                             const CfCheckOptions& options) {
  const std::string out(kOutVar);
  const auto out_idx = indices_of(finals, out);
  if (!options.global_otherwise) {
    for (const auto& k : out_idx) {
      auto v = values_at(finals, out, k);
      auto c = out_clause(v);
      if (!c.empty()) return CfViolation{out, k, v, c};
    }
  } else {
    bool chi12 = true, chi3 = true;
    std::optional<CfViolation> first;
    for (const auto& k : out_idx) {
      auto v = values_at(finals, out, k);
      bool c1 = v[0] == v[1] || v[3] == v[1];
      bool c2 = v[0] == v[2] || v[3] == v[2];
      bool c3 = v[0] == v[1] && v[0] == v[2] && v[0] == v[3];
      if (!(c1 && c2)) {
        chi12 = false;
        if (!first) first = CfViolation{out, k, v, c1 ? "base != B but merge != B" : "base != A but merge != A"};
      }
      if (!c3) {
        chi3 = false;
        if (!first) first = CfViolation{out, k, v, "versions differ"};
      }
    }
    if (!chi12 && !chi3) return first;
  }
  for (const auto& name : options.check_vars) {
    if (name == out) continue;
    for (const auto& k : indices_of(finals, name)) {
      auto v = values_at(finals, name, k);
      auto c = var_clause(v);
      if (!c.empty()) return CfViolation{name, k, v, c};
    }
  }
  return std::nullopt;
}

std::string to_string(const CfViolation& v) {
  std::ostringstream os;
  os << v.var << '[' << v.index << "]: base=" << to_string(v.values[0])
     << " A=" << to_string(v.values[1]) << " B=" << to_string(v.values[2])
     << " merge=" << to_string(v.values[3]) << " (" << v.clause << ')';
  return os.str();
}

}  // namespace mergeguard
