#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace clone_lattice {

enum class TokenKind { Identifier, Keyword, Number, CharLiteral, StringLiteral, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;  // column of the last character
};

/// Splits C-subset source into tokens. Comments and whitespace are dropped,
/// CRLF is accepted. The returned vector always ends with an End token.
/// Throws SyntaxError on characters outside the subset (including
/// preprocessor lines).
std::vector<Token> tokenize(std::string_view source, const std::string& file);

bool is_type_keyword(std::string_view word);

}  // namespace clone_lattice
