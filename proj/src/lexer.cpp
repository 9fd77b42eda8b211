#include "lexer.hpp"

#include <cctype>

#include "wfomc/error.hpp"

namespace wfomc::detail {

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Quoted: return "quoted constant";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Not: return "'~'";
    case Tok::NegPlus: return "'\\+'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Dot: return "'.'";
    case Tok::ColonColon: return "'::'";
    case Tok::ColonDash: return "':-'";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
  }
  return "token";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1, depth = 0;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto emit = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(s.substr(i, len)), line, col});
    advance(len);
  };
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };

  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      if (depth == 0 && (out.empty() || out.back().kind != Tok::Newline)) emit(Tok::Newline, 1);
      else advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t n = 1;
      while (i + n < s.size() && ident_char(s[i + n])) ++n;
      emit(Tok::Ident, n);
      continue;
    }
    bool signed_number = (c == '-' || c == '+') && i + 1 < s.size() && digit(s[i + 1]);
    if (digit(c) || signed_number) {
      std::size_t n = signed_number ? 1 : 0;
      auto digits = [&] {
        while (i + n < s.size() && digit(s[i + n])) ++n;
      };
      digits();
      if (i + n + 1 < s.size() && s[i + n] == '.' && digit(s[i + n + 1])) {
        ++n;
        digits();
      }
      if (i + n < s.size() && (s[i + n] == 'e' || s[i + n] == 'E')) {
        std::size_t m = n + 1;
        if (i + m < s.size() && (s[i + m] == '-' || s[i + m] == '+')) ++m;
        if (i + m < s.size() && digit(s[i + m])) {
          n = m;
          digits();
        }
      }
      if (i + n + 1 < s.size() && s[i + n] == '/' && digit(s[i + n + 1])) {
        ++n;
        digits();
      }
      if (i + n < s.size() && s[i + n] == 'f' && !(i + n + 1 < s.size() && ident_char(s[i + n + 1]))) ++n;
      emit(Tok::Number, n);
      continue;
    }
    if (c == '"') {
      int l = line, k = col;
      std::size_t n = 1;
      while (i + n < s.size() && s[i + n] != '"' && s[i + n] != '\n') ++n;
      if (i + n >= s.size() || s[i + n] != '"') throw ParseError("unterminated quoted constant", l, k);
      out.push_back({Tok::Quoted, std::string(s.substr(i + 1, n - 1)), l, k});
      advance(n + 1);
      continue;
    }
    if (starts("<->")) { emit(Tok::Iff, 3); continue; }
    if (starts("->")) { emit(Tok::Implies, 2); continue; }
    if (starts("::")) { emit(Tok::ColonColon, 2); continue; }
    if (starts(":-")) { emit(Tok::ColonDash, 2); continue; }
    if (starts("\\+")) { emit(Tok::NegPlus, 2); continue; }
    switch (c) {
      case '(': ++depth; emit(Tok::LParen, 1); continue;
      case ')': depth = depth > 0 ? depth - 1 : 0; emit(Tok::RParen, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case '~': emit(Tok::Not, 1); continue;
      case '&': emit(Tok::And, 1); continue;
      case '|': emit(Tok::Or, 1); continue;
      case '.': emit(Tok::Dot, 1); continue;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

}  // namespace wfomc::detail
