#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mergeguard::detail {

enum class Tok {
  Int, Ident,
  Assign, Semi, LBracket, RBracket, LParen, RParen, LBrace, RBrace,
  Plus, Minus, Star,
  EqEq, NotEq, Lt, Le, Gt, Ge,
  AndAnd, OrOr, Bang,
  Hole,
  KwSkip, KwIf, KwElse, KwWhile, KwTrue, KwFalse,
  End,
  Invalid,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

/// Never throws; unknown characters become Tok::Invalid.
std::vector<Token> lex(std::string_view src);

std::string describe(Tok t);

}  // namespace mergeguard::detail
