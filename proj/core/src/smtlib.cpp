#include "mergeguard/smt.hpp"

#include <sstream>

namespace mergeguard {

namespace {

void declarations(const Signature& sig, std::ostream& os) {
  for (const auto& [name, decl] : sig.functions) {
    os << "(declare-fun |" << name << "| (";
    for (std::size_t i = 0; i < decl.args.size(); ++i) {
      if (i) os << ' ';
      os << to_smtlib(decl.args[i]);
    }
    os << ") " << to_smtlib(decl.result) << ")\n";
  }
  for (const auto& [name, sort] : sig.constants)
    os << "(declare-const |" << name << "| " << to_smtlib(sort) << ")\n";
}

}  // namespace

std::string emit_smtlib(const Formula& formula) {
  Signature sig;
  collect_signature(formula, sig);
  std::ostringstream os;
  declarations(sig, os);
  os << "(assert " << to_smtlib(formula) << ")\n";
  return os.str();
}

std::string logic_for(const std::vector<Formula>& assertions) {
  bool quant = false, nonlinear = false;
  for (const auto& a : assertions) {
    quant = quant || has_quantifier(a);
    nonlinear = nonlinear || is_nonlinear(a);
  }
  std::string logic = quant ? "" : "QF_";
  logic += "AUF";
  logic += nonlinear ? "NIA" : "LIA";
  return logic;
}

std::string emit_query(const std::vector<Formula>& hyps, const Formula& conclusion) {
  std::vector<Formula> all = hyps;
  all.push_back(term::neg(conclusion));
  Signature sig;
  for (const auto& a : all) collect_signature(a, sig);
  std::ostringstream os;
  os << "(set-logic " << logic_for(all) << ")\n";
  declarations(sig, os);
  for (const auto& a : all) os << "(assert " << to_smtlib(a) << ")\n";
  os << "(check-sat)\n";
  return os.str();
}

std::string initial_symbol(std::string_view name) { return std::string(name) + "@0"; }

Valuation concretize(const Model& model, const std::map<std::string, VarKind>& inputs) {
  Valuation sigma;
  for (const auto& [name, kind] : inputs) {
    const auto sym = initial_symbol(name);
    if (kind == VarKind::Scalar) {
      auto it = model.values.find(sym);
      sigma.set(name, 0, it == model.values.end() ? BigInt(0) : it->second);
    } else {
      auto it = model.arrays.find(sym);
      if (it == model.arrays.end()) continue;
      for (const auto& [idx, value] : it->second) sigma.set(name, idx, value);
    }
  }
  return sigma;
}

}  // namespace mergeguard
