#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wfomc::detail {

enum class Tok {
  Ident,
  Quoted,  // "..." constant, text without the quotes
  Number,  // 3, -1, 0.3, 3/10, 1e-2, 2.5f
  LParen,
  RParen,
  Comma,
  Not,      // ~
  NegPlus,  // \+
  And,
  Or,
  Implies,
  Iff,
  Dot,
  ColonColon,
  ColonDash,
  Newline,  // only outside parentheses
  End,
};

const char* describe(Tok t);

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

/// Splits the whole input up front. Newlines inside parentheses are dropped
/// so a sentence can span lines; `#` starts a comment.
std::vector<Token> tokenize(std::string_view text);

}  // namespace wfomc::detail
