#include "mergeguard/parser.hpp"

#include "lexer.hpp"

#include <algorithm>

namespace mergeguard {

using detail::Tok;
using detail::Token;

ParseError::ParseError(int line, int column, std::string found, std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string msg = std::to_string(line) + ":" + std::to_string(column) + ": unexpected " +
                          found;
        if (!expected.empty()) {
          msg += ", expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
          }
        }
        return msg;
      }()),
      line_(line),
      column_(column),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

namespace {

constexpr int kMaxDepth = 512;

struct Backtrack {};

class Parser {
 public:
  Parser(std::string_view src, bool allow_holes)
      : toks_(detail::lex(src)), allow_holes_(allow_holes) {}

  StmtPtr program_to_end() {
    auto p = program();
    expect_end();
    return p;
  }

  ExprPtr expr_to_end() {
    auto e = expr();
    expect_end();
    return e;
  }

  PredPtr pred_to_end() {
    auto p = pred();
    expect_end();
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool allow_holes_;
  int depth_ = 0;
  int speculative_ = 0;

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) p.fail({"shallower nesting"});
    }
    ~DepthGuard() { --p.depth_; }
  };

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok t) const { return peek().kind == t; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    if (speculative_ > 0) throw Backtrack{};
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input"
                        : t.kind == Tok::Invalid ? "character '" + t.text + "'"
                                                 : "'" + t.text + "'";
    throw ParseError(t.line, t.column, std::move(found), std::move(expected));
  }

  const Token& expect(Tok t) {
    if (!at(t)) fail({detail::describe(t)});
    return next();
  }

  void expect_end() {
    if (!at(Tok::End)) fail({"end of input"});
  }

  std::string identifier() {
    const Token& t = expect(Tok::Ident);
    if (t.text.find('#') != std::string::npos) {
      --pos_;
      fail({"identifier without '#'"});
    }
    return t.text;
  }

  bool starts_stmt() const {
    switch (peek().kind) {
      case Tok::KwSkip:
      case Tok::Ident:
      case Tok::KwIf:
      case Tok::KwWhile:
        return true;
      case Tok::Hole:
        return allow_holes_;
      default:
        return false;
    }
  }

  StmtPtr program() {
    std::vector<StmtPtr> items;
    while (starts_stmt()) items.push_back(stmt());
    return seq(items);
  }

  StmtPtr block() {
    expect(Tok::LBrace);
    auto p = program();
    if (!at(Tok::RBrace)) {
      std::vector<std::string> exp = {"'skip'", "identifier", "'if'", "'while'"};
      if (allow_holes_) exp.push_back("'<?HOLE?>'");
      exp.push_back("'}'");
      fail(exp);
    }
    next();
    return p;
  }

  StmtPtr stmt() {
    DepthGuard guard(*this);
    switch (peek().kind) {
      case Tok::KwSkip:
        next();
        expect(Tok::Semi);
        return skip();
      case Tok::Hole:
        next();
        if (at(Tok::Semi)) next();
        return hole();
      case Tok::KwIf: {
        next();
        expect(Tok::LParen);
        auto c = pred();
        expect(Tok::RParen);
        auto t = block();
        expect(Tok::KwElse);
        auto e = block();
        return if_stmt(c, t, e);
      }
      case Tok::KwWhile: {
        next();
        expect(Tok::LParen);
        auto c = pred();
        expect(Tok::RParen);
        return while_stmt(c, block());
      }
      default: {
        std::string name = identifier();
        if (at(Tok::LBracket)) {
          next();
          auto idx = expr();
          expect(Tok::RBracket);
          expect(Tok::Assign);
          auto rhs = expr();
          expect(Tok::Semi);
          return array_assign(std::move(name), idx, rhs);
        }
        if (name == kOutVar) fail({"'['"});
        expect(Tok::Assign);
        auto rhs = expr();
        expect(Tok::Semi);
        return assign(std::move(name), rhs);
      }
    }
  }

  ExprPtr expr() {
    DepthGuard guard(*this);
    auto lhs = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      auto op = next().kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
      lhs = bin_op(op, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    auto lhs = factor();
    while (at(Tok::Star)) {
      next();
      lhs = bin_op(ArithOp::Mul, lhs, factor());
    }
    return lhs;
  }

  ExprPtr factor() {
    DepthGuard guard(*this);
    switch (peek().kind) {
      case Tok::Int:
        return int_const(BigInt(next().text));
      case Tok::Ident: {
        std::string name = identifier();
        if (at(Tok::LBracket)) {
          next();
          auto idx = expr();
          expect(Tok::RBracket);
          return array_read(std::move(name), idx);
        }
        if (name == kOutVar) fail({"'['"});
        return var(std::move(name));
      }
      case Tok::LParen: {
        next();
        auto e = expr();
        expect(Tok::RParen);
        return e;
      }
      case Tok::Minus: {
        next();
        auto f = factor();
        if (f->kind == Expr::Kind::IntConst) return int_const(-f->value);
        return bin_op(ArithOp::Sub, int_const(0), f);
      }
      default:
        fail({"integer", "identifier", "'('", "'-'"});
    }
  }

  PredPtr pred() {
    DepthGuard guard(*this);
    auto lhs = conj();
    while (at(Tok::OrOr)) {
      next();
      lhs = pred_or(lhs, conj());
    }
    return lhs;
  }

  PredPtr conj() {
    auto lhs = neg();
    while (at(Tok::AndAnd)) {
      next();
      lhs = pred_and(lhs, neg());
    }
    return lhs;
  }

  static bool is_cmp(Tok t) {
    return t == Tok::EqEq || t == Tok::NotEq || t == Tok::Lt || t == Tok::Le || t == Tok::Gt ||
           t == Tok::Ge;
  }

  PredPtr neg() {
    DepthGuard guard(*this);
    switch (peek().kind) {
      case Tok::Bang:
        next();
        return pred_not(neg());
      case Tok::KwTrue:
        next();
        return pred_bool(true);
      case Tok::KwFalse:
        next();
        return pred_bool(false);
      case Tok::LParen: {
        // "(" pred ")" unless the parenthesis opens the left operand of a comparison.
        const std::size_t save = pos_;
        ++speculative_;
        try {
          next();
          auto p = pred();
          expect(Tok::RParen);
          --speculative_;
          if (!is_cmp(peek().kind) && !at(Tok::Plus) && !at(Tok::Minus) && !at(Tok::Star))
            return p;
        } catch (const Backtrack&) {
          --speculative_;
        }
        pos_ = save;
        return comparison();
      }
      default:
        return comparison();
    }
  }

  PredPtr comparison() {
    auto lhs = expr();
    if (!is_cmp(peek().kind)) fail({"'=='", "'!='", "'<'", "'<='", "'>'", "'>='"});
    CmpOp op = CmpOp::Eq;
    switch (next().kind) {
      case Tok::EqEq: op = CmpOp::Eq; break;
      case Tok::NotEq: op = CmpOp::Ne; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      default: op = CmpOp::Ge; break;
    }
    return cmp(op, lhs, expr());
  }
};

}  // namespace

StmtPtr parse_program(std::string_view text) { return Parser(text, false).program_to_end(); }

StmtPtr parse_hprogram(std::string_view text) { return Parser(text, true).program_to_end(); }

ExprPtr parse_expr(std::string_view text) { return Parser(text, false).expr_to_end(); }

PredPtr parse_pred(std::string_view text) { return Parser(text, false).pred_to_end(); }

}  // namespace mergeguard
