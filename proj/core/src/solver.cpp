#include "mergeguard/smt.hpp"

#include "sexpr.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>

namespace mergeguard {

using Clock = std::chrono::steady_clock;

namespace {
struct DeadlineExpired {};
}  // namespace

std::string resolve_solver_binary(const std::string& configured) {
  if (!configured.empty()) return configured;
  if (const char* env = std::getenv("MERGEGUARD_SOLVER"); env && *env) return env;
  return "z3";
}

struct SolverSession::Process {
  pid_t pid = -1;
  int to_child = -1;
  int from_child = -1;
  std::string buffer;

  ~Process() {
    if (to_child >= 0) ::close(to_child);
    if (from_child >= 0) ::close(from_child);
    if (pid > 0) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, nullptr, 0);
    }
  }
};

namespace {

std::vector<std::string> solver_args(const std::string& binary) {
  auto base = binary.substr(binary.find_last_of('/') + 1);
  if (base.rfind("cvc", 0) == 0)
    return {binary, "--lang=smt2", "--incremental", "--produce-models"};
  return {binary, "-in", "-smt2"};
}

// Moves universal quantifiers out of a negated conclusion by skolemization.
TermPtr negate_skolemized(const TermPtr& c, int& counter, std::string& last) {
  switch (c->op) {
    case Term::Op::Forall: {
      std::string name = "k!" + std::to_string(++counter);
      last = name;
      return negate_skolemized(
          substitute_bound(c->args[0], c->name, term::constant(name, Sort::Int)), counter, last);
    }
    case Term::Op::And: {
      std::vector<TermPtr> parts;
      for (const auto& a : c->args) parts.push_back(negate_skolemized(a, counter, last));
      return term::disj(std::move(parts));
    }
    case Term::Op::Or: {
      std::vector<TermPtr> parts;
      for (const auto& a : c->args) parts.push_back(negate_skolemized(a, counter, last));
      return term::conj(std::move(parts));
    }
    default:
      return term::neg(c);
  }
}

void constants_of(const TermPtr& t, std::vector<std::string>& out) {
  if (t->op == Term::Op::Const) {
    out.push_back(t->name);
    return;
  }
  for (const auto& a : t->args) constants_of(a, out);
}

// Keeps hypotheses connected to the conclusion through shared constants.
std::vector<Formula> slice(const std::vector<Formula>& hyps, const std::vector<TermPtr>& roots) {
  std::map<std::string, std::vector<std::size_t>> uses;
  std::vector<std::vector<std::string>> consts(hyps.size());
  std::vector<bool> keep(hyps.size(), false);
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    constants_of(hyps[i], consts[i]);
    if (consts[i].empty()) keep[i] = true;
    for (const auto& c : consts[i]) uses[c].push_back(i);
  }
  std::set<std::string> seen;
  std::vector<std::string> work;
  for (const auto& r : roots) constants_of(r, work);
  while (!work.empty()) {
    auto c = std::move(work.back());
    work.pop_back();
    if (!seen.insert(c).second) continue;
    auto it = uses.find(c);
    if (it == uses.end()) continue;
    for (auto i : it->second) {
      if (keep[i]) continue;
      keep[i] = true;
      for (const auto& d : consts[i])
        if (!seen.count(d)) work.push_back(d);
    }
  }
  std::vector<Formula> out;
  for (std::size_t i = 0; i < hyps.size(); ++i)
    if (keep[i]) out.push_back(hyps[i]);
  return out;
}

BigInt value_of(const detail::SExpr& e) {
  if (!e.is_list) {
    if (e.atom == "true") return 1;
    if (e.atom == "false") return 0;
    try {
      return BigInt(e.atom);
    } catch (...) {
      throw SolverError("unexpected model value '" + e.atom + "'");
    }
  }
  if (e.items.size() == 2 && !e.items[0].is_list && e.items[0].atom == "-")
    return -value_of(e.items[1]);
  throw SolverError("unexpected model value");
}

}  // namespace

SolverSession::SolverSession(SolverConfig config) : config_(std::move(config)) {
  config_.binary = resolve_solver_binary(config_.binary);
}

SolverSession::~SolverSession() {
  if (proc_ && proc_->to_child >= 0) {
    const char* bye = "(exit)\n";
    [[maybe_unused]] auto n = ::write(proc_->to_child, bye, std::strlen(bye));
  }
}

void SolverSession::restart() {
  proc_.reset();
  logic_.clear();
  depth_ = 0;
}

void SolverSession::ensure_started() {
  if (proc_) return;
  int in_pipe[2], out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0 || ::pipe2(out_pipe, O_CLOEXEC) != 0)
    throw SolverError(std::string("pipe: ") + std::strerror(errno));
  // Report exec failures through a close-on-exec pipe.
  int err_pipe[2];
  if (::pipe2(err_pipe, O_CLOEXEC) != 0)
    throw SolverError(std::string("pipe: ") + std::strerror(errno));

  auto args = solver_args(config_.binary);
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) throw SolverError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[0]);
    ::execvp(argv[0], argv.data());
    int e = errno;
    [[maybe_unused]] auto n = ::write(err_pipe[1], &e, sizeof e);
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  int child_errno = 0;
  auto got = ::read(err_pipe[0], &child_errno, sizeof child_errno);
  ::close(err_pipe[0]);

  proc_ = std::make_unique<Process>();
  proc_->pid = pid;
  proc_->to_child = in_pipe[1];
  proc_->from_child = out_pipe[0];
  if (got == static_cast<ssize_t>(sizeof child_errno)) {
    proc_.reset();
    throw SolverError("cannot run solver '" + config_.binary + "': " + std::strerror(child_errno));
  }
  ::signal(SIGPIPE, SIG_IGN);

  std::ostringstream setup;
  setup << "(set-option :print-success false)\n"
        << "(set-option :produce-models true)\n"
        << "(set-option :timeout " << config_.timeout.count() << ")\n"
        << "(echo \"mergeguard-ready\")\n";
  send(setup.str());
  auto deadline = Clock::now() + std::chrono::seconds(30);
  while (true) {
    auto r = read_response(deadline);
    if (r == "mergeguard-ready") break;
  }
}

void SolverSession::send(const std::string& text) {
  std::size_t off = 0;
  while (off < text.size()) {
    auto n = ::write(proc_->to_child, text.data() + off, text.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      restart();
      throw SolverError("solver process closed its input");
    }
    off += static_cast<std::size_t>(n);
  }
}

std::string SolverSession::read_response(Clock::time_point deadline) {
  auto& buf = proc_->buffer;
  while (true) {
    std::size_t used = 0;
    if (auto e = detail::parse_sexpr(buf, used)) {
      std::string text = buf.substr(0, used);
      buf.erase(0, used);
      auto first = text.find_first_not_of(" \t\r\n");
      return first == std::string::npos ? std::string() : text.substr(first);
    }
    auto now = Clock::now();
    if (now >= deadline) throw DeadlineExpired{};
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd pfd{proc_->from_child, POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(ms, 1000)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw SolverError(std::string("poll: ") + std::strerror(errno));
    }
    if (rc == 0) continue;
    char chunk[65536];
    auto n = ::read(proc_->from_child, chunk, sizeof chunk);
    if (n <= 0) {
      restart();
      throw SolverError("solver process terminated unexpectedly");
    }
    buf.append(chunk, static_cast<std::size_t>(n));
  }
}

void SolverSession::set_logic(const std::string& logic) {
  if (logic == logic_) return;
  if (!logic_.empty()) {
    send("(reset)\n(set-option :print-success false)\n(set-option :produce-models true)\n"
         "(set-option :timeout " + std::to_string(config_.timeout.count()) + ")\n");
  }
  send("(set-logic " + logic + ")\n");
  logic_ = logic;
}

std::string SolverSession::version() {
  ensure_started();
  send("(get-info :version)\n");
  auto r = read_response(Clock::now() + std::chrono::seconds(10));
  std::size_t used = 0;
  auto e = detail::parse_sexpr(r, used);
  if (e && e->is_list && e->items.size() == 2) return e->items[1].atom;
  return r;
}

SolverAnswer SolverSession::check_entailment(const std::vector<Formula>& hyps,
                                             const Formula& conclusion, const Probes& probes) {
  ensure_started();
  const auto start = Clock::now();
  ++stats_.queries;

  auto negated = negate_skolemized(conclusion, skolem_counter_, last_skolem_);
  std::vector<TermPtr> roots{negated};
  roots.insert(roots.end(), probes.terms.begin(), probes.terms.end());
  for (const auto& [arr, idx] : probes.array_reads) {
    roots.push_back(arr);
    roots.push_back(idx);
  }
  std::vector<Formula> assertions = config_.slice ? slice(hyps, roots) : hyps;
  assertions.push_back(negated);

  std::vector<TermPtr> all_terms = assertions;
  all_terms.insert(all_terms.end(), probes.terms.begin(), probes.terms.end());
  set_logic(logic_for(all_terms));

  Signature sig;
  for (const auto& a : all_terms) collect_signature(a, sig);
  for (const auto& [arr, idx] : probes.array_reads) {
    collect_signature(arr, sig);
    collect_signature(idx, sig);
  }

  std::ostringstream q;
  q << "(push 1)\n";
  for (const auto& [name, decl] : sig.functions) {
    q << "(declare-fun |" << name << "| (";
    for (std::size_t i = 0; i < decl.args.size(); ++i) q << (i ? " " : "") << to_smtlib(decl.args[i]);
    q << ") " << to_smtlib(decl.result) << ")\n";
  }
  for (const auto& [name, sort] : sig.constants)
    q << "(declare-const |" << name << "| " << to_smtlib(sort) << ")\n";
  for (const auto& a : assertions) q << "(assert " << to_smtlib(a) << ")\n";
  q << "(check-sat)\n";
  send(q.str());
  ++depth_;

  SolverAnswer ans;
  const auto deadline = start + config_.timeout + std::chrono::seconds(5);
  auto finish = [&] {
    stats_.seconds += std::chrono::duration<double>(Clock::now() - start).count();
  };
  try {
    auto r = read_response(deadline);
    if (r == "unsat") {
      ans.kind = SolverAnswer::Kind::Valid;
      ++stats_.valid;
    } else if (r == "sat") {
      ans.kind = SolverAnswer::Kind::Invalid;
      ++stats_.invalid;
      std::vector<std::string> requested;
      std::vector<int> role;  // 0 model constant, 1 probe, 2 array index, 3 array value
      if (probes.full_model)
        for (const auto& [name, sort] : sig.constants)
          if (sort != Sort::Array) {
            requested.push_back("|" + name + "|");
            role.push_back(0);
          }
      for (const auto& t : probes.terms) {
        requested.push_back(to_smtlib(t));
        role.push_back(1);
      }
      for (const auto& [arr, idx] : probes.array_reads) {
        requested.push_back(to_smtlib(idx));
        role.push_back(2);
        requested.push_back(to_smtlib(term::select(arr, idx)));
        role.push_back(3);
      }
      if (!requested.empty()) {
        std::string cmd = "(get-value (";
        for (const auto& s : requested) cmd += s + " ";
        cmd += "))\n";
        send(cmd);
        auto v = read_response(deadline);
        std::size_t used = 0;
        auto e = detail::parse_sexpr(v, used);
        if (!e || !e->is_list || e->items.size() != requested.size())
          throw SolverError("malformed get-value response: " + v.substr(0, 200));
        std::vector<std::string> const_names;
        for (const auto& [name, sort] : sig.constants)
          if (sort != Sort::Array) const_names.push_back(name);
        std::size_t ci = 0, ai = 0;
        BigInt pending_index;
        for (std::size_t i = 0; i < requested.size(); ++i) {
          const auto& pair = e->items[i];
          if (!pair.is_list || pair.items.size() != 2)
            throw SolverError("malformed get-value entry");
          BigInt val = value_of(pair.items[1]);
          switch (role[i]) {
            case 0: ans.model.values[const_names[ci++]] = val; break;
            case 1: ans.probe_values.push_back(val); break;
            case 2: pending_index = val; break;
            case 3:
              ans.model.arrays[probes.array_reads[ai++].first->name][pending_index] = val;
              break;
          }
        }
      }
    } else if (r == "unknown") {
      ++stats_.unknown;
      send("(get-info :reason-unknown)\n");
      auto why = read_response(deadline);
      std::size_t used = 0;
      auto e = detail::parse_sexpr(why, used);
      ans.reason = e && e->is_list && e->items.size() == 2 ? e->items[1].atom : why;
      if (ans.reason == "canceled" || ans.reason.find("timeout") != std::string::npos)
        ans.reason = "timeout";
    } else {
      restart();
      finish();
      throw SolverError("solver protocol error: " + r.substr(0, 500));
    }
  } catch (const DeadlineExpired&) {
    restart();
    ++stats_.unknown;
    finish();
    ans.kind = SolverAnswer::Kind::Unknown;
    ans.reason = "timeout";
    return ans;
  }
  send("(pop 1)\n");
  --depth_;
  finish();
  return ans;
}

}  // namespace mergeguard
