#include "clone_lattice/lexer.hpp"

#include <array>
#include <cctype>

#include "clone_lattice/errors.hpp"

namespace clone_lattice {

namespace {

constexpr std::array<std::string_view, 24> kKeywords = {
    "int",    "char",   "float",  "double", "void",     "long",  "short",  "unsigned",
    "signed", "struct", "const",  "static", "register", "for",   "while",  "if",
    "else",   "return", "sizeof", "break",  "continue", "extern", "volatile", "do"};

constexpr std::array<std::string_view, 12> kTypeKeywords = {
    "int", "char", "float", "double", "void", "long", "short", "unsigned", "signed", "struct",
    "const", "volatile"};

// Longest first so that maximal munch works with a linear scan.
constexpr std::array<std::string_view, 45> kPuncts = {
    "<<=", ">>=", "...", "->", "++", "--", "<=", ">=", "==", "!=", "&&", "||",
    "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "<<", ">>", "(",  ")",
    "[",   "]",   "{",   "}",  ";",  ",",  ".",  "=",  "<",  ">",  "+",  "-",
    "*",   "/",   "%",   "&",  "|",  "^",  "!",  "~",  "?"};

bool is_keyword(std::string_view w) {
  for (auto k : kKeywords) {
    if (k == w) return true;
  }
  return false;
}

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.line = end.end_line = line_;
    end.col = end.end_col = col_;
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(file_, line_, col_, msg); }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) fail("unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token t;
    t.line = line_;
    t.col = col_;
    const std::size_t start = pos_;
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = is_keyword(t.text) ? TokenKind::Keyword : TokenKind::Identifier;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      const bool hex = c == '0' && (peek(1) == 'x' || peek(1) == 'X');
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '_' ||
             (!hex && (peek() == '+' || peek() == '-') &&
              (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E'))) {
        advance();
      }
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = TokenKind::Number;
    } else if (c == '\'' || c == '"') {
      advance();
      while (pos_ < src_.size() && peek() != c) {
        if (peek() == '\n') fail("unterminated literal");
        if (peek() == '\\') advance();
        advance();
      }
      if (pos_ >= src_.size()) fail("unterminated literal");
      advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = c == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral;
    } else {
      for (auto p : kPuncts) {
        if (src_.substr(pos_, p.size()) == p) {
          for (std::size_t i = 0; i < p.size(); ++i) advance();
          t.text = std::string(p);
          t.kind = TokenKind::Punct;
          break;
        }
      }
      if (t.kind != TokenKind::Punct) {
        if (c == '#') fail("preprocessor directives are not supported; expand the file first");
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    t.end_line = line_;
    t.end_col = col_ - 1;
    return t;
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

bool is_type_keyword(std::string_view word) {
  for (auto k : kTypeKeywords) {
    if (k == word) return true;
  }
  return false;
}

}  // namespace clone_lattice
