#include "mergeguard/printer.hpp"

namespace mergeguard {

namespace {

const char* op_text(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
  }
  return "?";
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

// Emits canonical tokens. Layout is decided by the consumers.
class TokenWriter {
 public:
  explicit TokenWriter(bool strip) : strip_(strip) {}
  std::vector<std::string> out;

  void ident(const std::string& name) {
    if (strip_) {
      auto p = name.find('#');
      out.push_back(p == std::string::npos ? name : name.substr(0, p));
    } else {
      out.push_back(name);
    }
  }

  // prec: 1 additive, 2 multiplicative, 3 atomic
  void expr(const Expr& e, int min_prec) {
    switch (e.kind) {
      case Expr::Kind::IntConst:
        out.push_back(e.value.str());
        return;
      case Expr::Kind::Var:
        ident(e.name);
        return;
      case Expr::Kind::ArrayRead:
        ident(e.name);
        out.push_back("[");
        expr(*e.args[0], 1);
        out.push_back("]");
        return;
      case Expr::Kind::Bottom:
        out.push_back("_|_");
        return;
      case Expr::Kind::Apply:
        out.push_back(e.name);
        out.push_back("(");
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i) out.push_back(",");
          expr(*e.args[i], 1);
        }
        out.push_back(")");
        return;
      case Expr::Kind::BinOp: {
        int prec = e.op == ArithOp::Mul ? 2 : 1;
        bool paren = prec < min_prec;
        if (paren) out.push_back("(");
        expr(*e.args[0], prec);
        out.push_back(op_text(e.op));
        expr(*e.args[1], prec + 1);
        if (paren) out.push_back(")");
        return;
      }
    }
  }

  // prec: 1 or, 2 and, 3 unary/atomic
  void pred(const Pred& p, int min_prec) {
    switch (p.kind) {
      case Pred::Kind::Bool:
        out.push_back(p.value ? "true" : "false");
        return;
      case Pred::Kind::Cmp:
        expr(*p.lhs, 1);
        out.push_back(cmp_text(p.cmp));
        expr(*p.rhs, 1);
        return;
      case Pred::Kind::Not:
        out.push_back("!");
        if (p.args[0]->kind == Pred::Kind::Bool || p.args[0]->kind == Pred::Kind::Not) {
          pred(*p.args[0], 3);
        } else {
          out.push_back("(");
          pred(*p.args[0], 1);
          out.push_back(")");
        }
        return;
      case Pred::Kind::And:
      case Pred::Kind::Or: {
        int prec = p.kind == Pred::Kind::Or ? 1 : 2;
        bool paren = prec < min_prec;
        if (paren) out.push_back("(");
        pred(*p.args[0], prec);
        out.push_back(p.kind == Pred::Kind::Or ? "||" : "&&");
        pred(*p.args[1], prec + 1);
        if (paren) out.push_back(")");
        return;
      }
    }
  }

  void stmt_list(const StmtPtr& s) {
    auto items = flatten(s);
    if (items.empty()) {
      out.push_back("skip");
      out.push_back(";");
      return;
    }
    for (const auto& item : items) stmt(*item);
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Skip:
        out.push_back("skip");
        out.push_back(";");
        return;
      case Stmt::Kind::Hole:
        out.push_back("<?HOLE?>");
        return;
      case Stmt::Kind::Assign:
        ident(s.target);
        out.push_back(":=");
        expr(*s.rhs, 1);
        out.push_back(";");
        return;
      case Stmt::Kind::ArrayAssign:
        ident(s.target);
        out.push_back("[");
        expr(*s.index, 1);
        out.push_back("]");
        out.push_back(":=");
        expr(*s.rhs, 1);
        out.push_back(";");
        return;
      case Stmt::Kind::Seq:
        stmt_list(std::make_shared<Stmt>(s));
        return;
      case Stmt::Kind::If:
        out.push_back("if");
        out.push_back("(");
        pred(*s.cond, 1);
        out.push_back(")");
        out.push_back("{");
        stmt_list(s.body[0]);
        out.push_back("}");
        out.push_back("else");
        out.push_back("{");
        stmt_list(s.body[1]);
        out.push_back("}");
        return;
      case Stmt::Kind::While:
        out.push_back("while");
        out.push_back("(");
        pred(*s.cond, 1);
        out.push_back(")");
        out.push_back("{");
        stmt_list(s.body[0]);
        out.push_back("}");
        return;
    }
  }

 private:
  bool strip_;
};

bool glue_left(const std::string& t) {
  return t == ";" || t == "]" || t == "," || t == ")" || t == "[";
}

bool glue_right(const std::string& t) { return t == "[" || t == "(" || t == "!"; }

std::string join(const std::vector<std::string>& toks) {
  std::string s;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto& t = toks[i];
    if (i > 0) {
      const auto& prev = toks[i - 1];
      bool call_paren = t == "(" && prev.rfind("F_", 0) == 0;
      if (!glue_left(t) && !glue_right(prev) && !call_paren) s += ' ';
    }
    s += t;
  }
  return s;
}

// Renders statements one per line, reusing the canonical expression text.
class BlockWriter {
 public:
  explicit BlockWriter(int indent) : indent_(indent) {}
  std::string out;

  void list(const StmtPtr& s, int level) {
    auto items = flatten(s);
    if (items.empty()) {
      line(level, "skip;");
      return;
    }
    for (const auto& item : items) stmt(*item, level);
  }

 private:
  int indent_;

  void line(int level, const std::string& text) {
    out.append(static_cast<std::size_t>(level * indent_), ' ');
    out += text;
    out += '\n';
  }

  void stmt(const Stmt& s, int level) {
    switch (s.kind) {
      case Stmt::Kind::If:
        line(level, "if (" + to_string(*s.cond) + ") {");
        list(s.body[0], level + 1);
        line(level, "} else {");
        list(s.body[1], level + 1);
        line(level, "}");
        return;
      case Stmt::Kind::While:
        line(level, "while (" + to_string(*s.cond) + ") {");
        list(s.body[0], level + 1);
        line(level, "}");
        return;
      default: {
        TokenWriter w(false);
        w.stmt(s);
        line(level, join(w.out));
      }
    }
  }
};

}  // namespace

std::string pretty_print(const StmtPtr& s) {
  TokenWriter w(false);
  w.stmt_list(s);
  return join(w.out);
}

std::string pretty_print_block(const StmtPtr& s, int indent) {
  BlockWriter w(indent);
  w.list(s, 0);
  return w.out;
}

std::string to_string(const Expr& e) {
  TokenWriter w(false);
  w.expr(e, 1);
  return join(w.out);
}

std::string to_string(const Pred& p) {
  TokenWriter w(false);
  w.pred(p, 1);
  return join(w.out);
}

std::vector<std::string> tokens(const StmtPtr& s, bool strip_tags) {
  TokenWriter w(strip_tags);
  w.stmt_list(s);
  return std::move(w.out);
}

}  // namespace mergeguard
