#include "mergeguard/ndiff.hpp"

#include <cassert>

namespace mergeguard {

namespace {

bool same_head(const StmtPtr& a, const StmtPtr& b) {
  if (a->kind != b->kind) return false;
  if (a->kind != Stmt::Kind::If && a->kind != Stmt::Kind::While) return false;
  return pred_equal(*a->cond, *b->cond);
}

bool matchable(const StmtPtr& s, const StmtPtr& h) {
  if (h->kind == Stmt::Kind::Hole) return false;
  return same_head(s, h) || stmt_equal(s, h);
}

Diff2Result diff_single(const StmtPtr& s, const StmtPtr& h);

Diff2Result diff_lists(const std::vector<StmtPtr>& ls, const std::vector<StmtPtr>& lh) {
  const std::size_t n = ls.size(), m = lh.size();
  // lcs[i][j] = LCS length of ls[i..] and lh[j..]
  std::vector<std::vector<std::size_t>> lcs(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;)
      lcs[i][j] = matchable(ls[i], lh[j]) ? lcs[i + 1][j + 1] + 1
                                          : std::max(lcs[i + 1][j], lcs[i][j + 1]);

  std::vector<Diff2Result> parts;
  std::vector<StmtPtr> run_s, run_h;
  auto flush = [&] {
    const std::size_t k = std::max(run_s.size(), run_h.size());
    for (std::size_t t = 0; t < k; ++t) {
      StmtPtr a = t < run_s.size() ? run_s[t] : skip();
      StmtPtr b = t < run_h.size() ? run_h[t] : skip();
      parts.push_back({hole(), {a}, {b}});
    }
    run_s.clear();
    run_h.clear();
  };

  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && matchable(ls[i], lh[j]) && lcs[i][j] == lcs[i + 1][j + 1] + 1) {
      flush();
      parts.push_back(diff_single(ls[i], lh[j]));
      ++i;
      ++j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      run_h.push_back(lh[j++]);
    } else {
      run_s.push_back(ls[i++]);
    }
  }
  flush();

  Diff2Result out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    Diff2Result merged{it->shared, it->edit, it->hedit};
    if (out.shared) {
      merged.shared = seq(it->shared, out.shared);
      merged.edit.insert(merged.edit.end(), out.edit.begin(), out.edit.end());
      merged.hedit.insert(merged.hedit.end(), out.hedit.begin(), out.hedit.end());
    }
    out = std::move(merged);
  }
  if (!out.shared) out.shared = skip();
  return out;
}

Diff2Result diff_single(const StmtPtr& s, const StmtPtr& h) {
  if (h->kind == Stmt::Kind::Hole) return {hole(), {s}, {h}};
  if (stmt_equal(s, h)) return {h, {}, {}};
  if (same_head(s, h)) {
    if (s->kind == Stmt::Kind::If) {
      auto t = diff2(s->body[0], h->body[0]);
      auto e = diff2(s->body[1], h->body[1]);
      Diff2Result r{if_stmt(h->cond, t.shared, e.shared), std::move(t.edit), std::move(t.hedit)};
      r.edit.insert(r.edit.end(), e.edit.begin(), e.edit.end());
      r.hedit.insert(r.hedit.end(), e.hedit.begin(), e.hedit.end());
      return r;
    }
    auto b = diff2(s->body[0], h->body[0]);
    return {while_stmt(h->cond, b.shared), std::move(b.edit), std::move(b.hedit)};
  }
  return {hole(), {s}, {h}};
}

#ifndef NDEBUG
void check_postconditions(const StmtPtr& s, const StmtPtr& h, const Diff2Result& r) {
  const auto holes = num_holes(*r.shared);
  assert(r.edit.size() == holes && r.hedit.size() == holes);
  assert(stmt_equal(apply_edit(r.shared, r.edit), s));
  assert(stmt_equal(apply_edit(r.shared, r.hedit), h));
  std::size_t hedit_holes = 0;
  for (const auto& x : r.hedit) hedit_holes += num_holes(*x);
  assert(hedit_holes == num_holes(*h));
  (void)s;
  (void)h;
  (void)hedit_holes;
}
#endif

}  // namespace

Diff2Result diff2(const StmtPtr& s, const StmtPtr& h) {
  auto ls = flatten(s);
  auto lh = flatten(h);
  Diff2Result r;
  if (ls.size() == 1 && lh.size() == 1)
    r = diff_single(ls[0], lh[0]);
  else if (lh.size() == 1 && lh[0]->kind == Stmt::Kind::Hole)
    r = {hole(), {s}, {lh[0]}};
  else
    r = diff_lists(ls, lh);
#ifndef NDEBUG
  check_postconditions(s, h, r);
#endif
  return r;
}

Edit compose(std::span<const StmtPtr> hedit, std::span<const StmtPtr> edit) {
  std::size_t needed = 0;
  for (const auto& x : hedit) needed += num_holes(*x);
  if (needed != edit.size())
    throw EditArityMismatch("hole-edit has " + std::to_string(needed) + " holes but edit has " +
                            std::to_string(edit.size()) + " statements");
  Edit out;
  out.reserve(hedit.size());
  std::size_t pos = 0;
  for (const auto& x : hedit) {
    const auto k = num_holes(*x);
    if (x->kind == Stmt::Kind::Hole)
      out.push_back(edit[pos]);
    else if (k == 0)
      out.push_back(x);
    else
      out.push_back(apply_edit(x, edit.subspan(pos, k)));
    pos += k;
  }
  return out;
}

DiffResult ndiff(std::span<const StmtPtr> programs) {
  DiffResult r;
  if (programs.empty()) return r;
  r.shared = programs[0];
  r.edits.push_back({});
  for (std::size_t i = 1; i < programs.size(); ++i) {
    auto d = diff2(programs[i], r.shared);
    for (auto& e : r.edits) e = compose(d.hedit, e);
    r.edits.push_back(std::move(d.edit));
    r.shared = d.shared;
  }
  return r;
}

}  // namespace mergeguard
