#include "cli.hpp"

#include "mergeguard/printer.hpp"

#include <cmath>
#include <sstream>

namespace mergeguard::cli {

namespace {

std::string key_of(const std::string& var, const BigInt& index, bool scalar) {
  return scalar ? var : var + "[" + index.str() + "]";
}

long long ms(double seconds) { return std::llround(seconds * 1000); }

}  // namespace

nlohmann::json valuation_json(const Valuation& v) {
  std::map<std::string, bool> arrays;
  for (const auto& [key, _] : v.entries())
    if (key.second != 0 || key.first == kOutVar) arrays[key.first] = true;
  auto out = nlohmann::json::object();
  for (const auto& [key, value] : v.entries())
    out[key_of(key.first, key.second, !arrays.count(key.first))] = value.str();
  return out;
}

nlohmann::json verdict_json(const Verdict& v, const Options& options) {
  nlohmann::json j;
  const auto& d = v.diagnostics;
  j["verdict"] = to_string(v.kind);
  j["mode"] = to_string(options.mode);
  j["holes"] = d.holes;
  if (v.kind == Verdict::Kind::Conflict) j["confirmed"] = v.confirmed;
  if (!v.reason.empty()) j["reason"] = v.reason;

  auto rules = nlohmann::json::object();
  for (const auto& [hole, rule] : d.hole_rules) rules[std::to_string(hole)] = rule;
  j["hole_rules"] = rules;
  auto counts = nlohmann::json::object();
  for (const auto& [rule, n] : d.rule_counts) counts[std::to_string(rule)] = n;
  j["rule_counts"] = counts;

  auto invs = nlohmann::json::array();
  for (const auto& inv : d.invariants) {
    auto conj = nlohmann::json::array();
    for (const auto& e : inv.conjuncts) conj.push_back(to_string(e));
    invs.push_back({{"loop", inv.loop}, {"conjuncts", conj}});
  }
  j["invariants"] = invs;

  if (v.witness) j["witness"] = valuation_json(*v.witness);
  if (v.violation) {
    auto vals = nlohmann::json::array();
    for (const auto& x : v.violation->values) vals.push_back(to_string(x));
    j["violation"] = {{"var", v.violation->var},
                      {"index", v.violation->index.str()},
                      {"values", vals},
                      {"clause", v.violation->clause}};
  }
  j["solver_queries"] = d.solver.queries;
  if (options.timings) {
    j["timings_ms"] = {{"rpc", ms(d.rpc_seconds)},
                       {"solver", ms(d.solver.seconds)},
                       {"total", ms(d.seconds)}};
  }
  return j;
}

std::string verdict_text(const Verdict& v, const Options& options) {
  std::ostringstream os;
  const auto& d = v.diagnostics;
  os << "verdict: " << to_string(v.kind);
  if (v.kind == Verdict::Kind::Conflict) os << (v.confirmed ? " (confirmed)" : " (unconfirmed)");
  os << "\n";
  if (!v.reason.empty()) os << "reason: " << v.reason << "\n";
  os << "mode: " << to_string(options.mode) << "\n";
  os << "holes: " << d.holes << "\n";
  if (!d.hole_rules.empty()) {
    os << "rules:";
    for (const auto& [hole, rule] : d.hole_rules) os << " " << hole << "->" << rule;
    os << "\n";
  }
  for (const auto& inv : d.invariants) {
    os << "invariant " << inv.loop << ":";
    if (inv.conjuncts.empty()) os << " true";
    for (std::size_t i = 0; i < inv.conjuncts.size(); ++i)
      os << (i ? " && " : " ") << to_string(inv.conjuncts[i]);
    os << "\n";
  }
  if (v.witness) {
    os << "witness: {";
    bool first = true;
    const auto w = valuation_json(*v.witness);
    for (const auto& [key, value] : w.items()) {
      os << (first ? "" : ", ") << key << "=" << value.get<std::string>();
      first = false;
    }
    os << "}\n";
  }
  if (v.violation) os << "violation: " << to_string(*v.violation) << "\n";
  os << "solver queries: " << d.solver.queries << "\n";
  if (options.timings)
    os << "time: " << ms(d.seconds) << " ms (rpc " << ms(d.rpc_seconds) << ", solver "
       << ms(d.solver.seconds) << ")\n";
  return os.str();
}

}  // namespace mergeguard::cli
