#include "mergeguard/analysis.hpp"

#include "mergeguard/product.hpp"

namespace mergeguard {

namespace {

void modifies_into(const Stmt& s, std::set<std::string>& out) {
  if (s.kind == Stmt::Kind::Assign || s.kind == Stmt::Kind::ArrayAssign) out.insert(s.target);
  for (const auto& c : s.body) modifies_into(*c, out);
}

using DepMap = std::map<std::string, std::set<std::string>>;

const std::set<std::string>& lookup(DepMap& d, const std::string& v) {
  auto it = d.find(v);
  if (it == d.end()) it = d.emplace(v, std::set<std::string>{v}).first;
  return it->second;
}

std::set<std::string> reads(DepMap& d, const std::set<std::string>& vs) {
  std::set<std::string> out;
  for (const auto& v : vs) {
    const auto& dv = lookup(d, v);
    out.insert(dv.begin(), dv.end());
  }
  return out;
}

void join_into(DepMap& acc, const DepMap& other) {
  for (const auto& [v, deps] : other) {
    auto it = acc.find(v);
    if (it == acc.end())
      acc.emplace(v, deps);
    else
      it->second.insert(deps.begin(), deps.end());
  }
}

// Variables absent from a map implicitly depend on themselves; make that
// explicit before joining so the union keeps the self dependence.
void align(DepMap& a, DepMap& b) {
  for (const auto& [v, _] : a) lookup(b, v);
  for (const auto& [v, _] : b) lookup(a, v);
}

void flow(const Stmt& s, DepMap& d, const std::set<std::string>& ctx) {
  switch (s.kind) {
    case Stmt::Kind::Skip:
    case Stmt::Kind::Hole:
      return;
    case Stmt::Kind::Assign: {
      std::set<std::string> used;
      collect_vars(*s.rhs, used);
      auto deps = reads(d, used);
      deps.insert(ctx.begin(), ctx.end());
      d[s.target] = std::move(deps);
      return;
    }
    case Stmt::Kind::ArrayAssign: {
      std::set<std::string> used;
      collect_vars(*s.index, used);
      collect_vars(*s.rhs, used);
      auto deps = reads(d, used);
      deps.insert(ctx.begin(), ctx.end());
      const auto& old = lookup(d, s.target);
      deps.insert(old.begin(), old.end());
      d[s.target] = std::move(deps);
      return;
    }
    case Stmt::Kind::Seq:
      flow(*s.body[0], d, ctx);
      flow(*s.body[1], d, ctx);
      return;
    case Stmt::Kind::If: {
      std::set<std::string> used;
      collect_vars(*s.cond, used);
      auto inner = reads(d, used);
      inner.insert(ctx.begin(), ctx.end());
      DepMap t = d, e = d;
      flow(*s.body[0], t, inner);
      flow(*s.body[1], e, inner);
      align(t, e);
      join_into(t, e);
      d = std::move(t);
      return;
    }
    case Stmt::Kind::While: {
      std::set<std::string> used;
      collect_vars(*s.cond, used);
      while (true) {
        auto inner = reads(d, used);
        inner.insert(ctx.begin(), ctx.end());
        DepMap next = d;
        flow(*s.body[0], next, inner);
        DepMap joined = d;
        align(joined, next);
        join_into(joined, next);
        if (joined == d) break;
        d = std::move(joined);
      }
      // Loop exit is control dependent on the guard.
      auto guard = reads(d, used);
      std::set<std::string> mods;
      modifies_into(*s.body[0], mods);
      for (const auto& m : mods) {
        auto& dm = d[m];
        dm.insert(guard.begin(), guard.end());
        dm.insert(ctx.begin(), ctx.end());
      }
      return;
    }
  }
}

}  // namespace

std::set<std::string> modifies(const Stmt& s) {
  std::set<std::string> out;
  modifies_into(s, out);
  return out;
}

DepSummary summarize_dependencies(const Stmt& s) {
  DepSummary out;
  out.modified = modifies(s);
  DepMap d;
  flow(s, d, {});
  for (const auto& y : out.modified) out.deps[y] = lookup(d, y);
  return out;
}

std::set<std::string> dependencies(const Stmt& s, const std::string& y) {
  auto summary = summarize_dependencies(s);
  auto it = summary.deps.find(y);
  if (it == summary.deps.end()) throw NotModified("'" + y + "' is not modified");
  return it->second;
}

const std::string& UfRegistry::symbol(const void* fragment, std::size_t length,
                                      const std::string& v) {
  auto key = std::make_tuple(fragment, length, v);
  auto it = names_.find(key);
  if (it == names_.end())
    it = names_.emplace(key, "F_" + std::to_string(names_.size() + 1)).first;
  return it->second;
}

StmtPtr SharedSummary::as_stmt() const {
  std::vector<StmtPtr> items;
  for (const auto& a : assigns) {
    std::vector<ExprPtr> args;
    for (const auto& x : a.args) args.push_back(var(x));
    items.push_back(assign(a.target, apply_fn(a.fn, std::move(args))));
  }
  return seq(items);
}

SharedSummary summarize_fragment(std::span<const StmtPtr> items, std::span<const int> tags,
                                 UfRegistry& registry) {
  SharedSummary out;
  if (items.empty()) return out;
  auto block = seq(items);
  auto deps = summarize_dependencies(*block);
  for (const auto& y : deps.modified) {
    const auto& fn = registry.symbol(items.front().get(), items.size(), y);
    for (int tag : tags) {
      SummaryAssign a{tagged(y, tag), fn, {}};
      for (const auto& x : deps.deps[y]) a.args.push_back(tagged(x, tag));
      out.assigns.push_back(std::move(a));
    }
  }
  return out;
}

SharedSummary summarize_shared(const StmtPtr& s, std::span<const int> tags, UfRegistry& registry) {
  StmtPtr items[] = {s};
  return summarize_fragment(items, tags, registry);
}

}  // namespace mergeguard
