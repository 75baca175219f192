#include "lexer.hpp"

#include <cctype>

namespace mergeguard::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#';
}

Tok keyword(std::string_view w) {
  if (w == "skip") return Tok::KwSkip;
  if (w == "if") return Tok::KwIf;
  if (w == "else") return Tok::KwElse;
  if (w == "while") return Tok::KwWhile;
  if (w == "true") return Tok::KwTrue;
  if (w == "false") return Tok::KwFalse;
  return Tok::Ident;
}

}  // namespace

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto emit = [&](Tok t, std::size_t n) {
    out.push_back({t, std::string(src.substr(i, n)), line, col});
    advance(n);
  };
  static constexpr std::string_view kHole = "<?HOLE?>";

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (src.substr(i, kHole.size()) == kHole) {
      emit(Tok::Hole, kHole.size());
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
      emit(Tok::Int, n);
      continue;
    }
    if (ident_start(c)) {
      std::size_t n = 0;
      while (i + n < src.size() && ident_char(src[i + n])) ++n;
      emit(keyword(src.substr(i, n)), n);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == ":=") { emit(Tok::Assign, 2); continue; }
    if (two == "==") { emit(Tok::EqEq, 2); continue; }
    if (two == "!=") { emit(Tok::NotEq, 2); continue; }
    if (two == "<=") { emit(Tok::Le, 2); continue; }
    if (two == ">=") { emit(Tok::Ge, 2); continue; }
    if (two == "&&") { emit(Tok::AndAnd, 2); continue; }
    if (two == "||") { emit(Tok::OrOr, 2); continue; }
    switch (c) {
      case ';': emit(Tok::Semi, 1); continue;
      case '[': emit(Tok::LBracket, 1); continue;
      case ']': emit(Tok::RBracket, 1); continue;
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '{': emit(Tok::LBrace, 1); continue;
      case '}': emit(Tok::RBrace, 1); continue;
      case '+': emit(Tok::Plus, 1); continue;
      case '-': emit(Tok::Minus, 1); continue;
      case '*': emit(Tok::Star, 1); continue;
      case '<': emit(Tok::Lt, 1); continue;
      case '>': emit(Tok::Gt, 1); continue;
      case '!': emit(Tok::Bang, 1); continue;
      default: emit(Tok::Invalid, 1); continue;
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::string describe(Tok t) {
  switch (t) {
    case Tok::Int: return "integer";
    case Tok::Ident: return "identifier";
    case Tok::Assign: return "':='";
    case Tok::Semi: return "';'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::Hole: return "'<?HOLE?>'";
    case Tok::KwSkip: return "'skip'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::End: return "end of input";
    case Tok::Invalid: return "invalid character";
  }
  return "token";
}

}  // namespace mergeguard::detail
