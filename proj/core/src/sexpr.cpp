#include "sexpr.hpp"

#include <cctype>

namespace mergeguard::detail {

namespace {

struct Reader {
  std::string_view s;
  std::size_t i = 0;
  bool incomplete = false;

  void ws() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  std::optional<SExpr> read() {
    ws();
    if (i >= s.size()) {
      incomplete = true;
      return std::nullopt;
    }
    SExpr e;
    if (s[i] == '(') {
      ++i;
      e.is_list = true;
      while (true) {
        ws();
        if (i >= s.size()) {
          incomplete = true;
          return std::nullopt;
        }
        if (s[i] == ')') {
          ++i;
          return e;
        }
        auto item = read();
        if (!item) return std::nullopt;
        e.items.push_back(std::move(*item));
      }
    }
    if (s[i] == '|') {
      auto end = s.find('|', i + 1);
      if (end == std::string_view::npos) {
        incomplete = true;
        return std::nullopt;
      }
      e.atom = std::string(s.substr(i + 1, end - i - 1));
      i = end + 1;
      return e;
    }
    if (s[i] == '"') {
      std::size_t j = i + 1;
      std::string text;
      while (true) {
        if (j >= s.size()) {
          incomplete = true;
          return std::nullopt;
        }
        if (s[j] == '"') {
          if (j + 1 < s.size() && s[j + 1] == '"') {
            text += '"';
            j += 2;
            continue;
          }
          break;
        }
        text += s[j++];
      }
      e.atom = text;
      i = j + 1;
      return e;
    }
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
           s[i] != ')')
      ++i;
    // An atom at the very end of the buffer may still be growing.
    if (i >= s.size()) {
      incomplete = true;
      return std::nullopt;
    }
    e.atom = std::string(s.substr(start, i - start));
    return e;
  }
};

}  // namespace

std::optional<SExpr> parse_sexpr(std::string_view text, std::size_t& consumed) {
  Reader r{text};
  auto e = r.read();
  if (!e) return std::nullopt;
  consumed = r.i;
  return e;
}

bool complete_sexpr(std::string_view text) {
  std::size_t n = 0;
  return parse_sexpr(text, n).has_value();
}

}  // namespace mergeguard::detail
