#include "clone_lattice/parser.hpp"

#include <optional>
#include <set>
#include <unordered_map>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/lexer.hpp"

namespace clone_lattice {

namespace {

const std::unordered_map<std::string_view, int>& binary_ops() {
  static const std::unordered_map<std::string_view, int> kOps = {
      {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6}, {"!=", 6},
      {"<", 7},  {">", 7},  {"<=", 7}, {">=", 7}, {"<<", 8}, {">>", 8}, {"+", 9},
      {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}};
  return kOps;
}

bool is_assign_op(std::string_view t) {
  return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" || t == "%=" || t == "&=" ||
         t == "|=" || t == "^=" || t == "<<=" || t == ">>=";
}

bool is_storage_word(std::string_view t) {
  return t == "static" || t == "extern" || t == "register" || t == "const" || t == "volatile";
}

struct DeclSpec {
  std::string base_type;
  bool is_typedef = false;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file) : toks_(std::move(tokens)), file_(std::move(file)) {}

  std::vector<AstTree> run() {
    std::vector<AstTree> out;
    while (!at_end()) {
      if (accept(";")) continue;
      if (auto fn = top_level()) out.push_back(std::move(*fn));
    }
    return out;
  }

 private:
  // -- token helpers ------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at_end() const { return cur().kind == TokenKind::End; }
  bool is(std::string_view text) const {
    return cur().kind != TokenKind::StringLiteral && cur().kind != TokenKind::CharLiteral &&
           cur().text == text;
  }
  bool accept(std::string_view text) {
    if (is(text)) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(file_, cur().line, cur().col, msg);
  }

  const Token& expect(std::string_view text) {
    if (!is(text)) {
      fail("expected '" + std::string(text) + "' but found '" +
           (at_end() ? std::string("end of input") : cur().text) + "'");
    }
    return toks_[pos_++];
  }

  std::string expect_identifier() {
    if (cur().kind != TokenKind::Identifier) fail("expected identifier");
    return toks_[pos_++].text;
  }

  SourceSpan span_of(std::size_t first, std::size_t last) const {
    SourceSpan s;
    s.file = file_;
    s.line_start = toks_[first].line;
    s.col_start = toks_[first].col;
    s.line_end = toks_[last].end_line;
    s.col_end = toks_[last].end_col;
    return s;
  }

  AstNode make(NodeKind kind, std::string text, std::size_t first) const {
    AstNode n;
    n.kind = kind;
    n.text = std::move(text);
    n.span = span_of(first, pos_ == 0 ? 0 : pos_ - 1);
    return n;
  }

  // -- types --------------------------------------------------------------

  bool is_typedef_name(const Token& t) const {
    return t.kind == TokenKind::Identifier && typedefs_.count(t.text) > 0;
  }

  bool starts_type(const Token& t) const {
    return (t.kind == TokenKind::Keyword && (is_type_keyword(t.text) || is_storage_word(t.text) ||
                                             t.text == "typedef")) ||
           is_typedef_name(t);
  }

  // Heuristic for declarations whose type is an unknown typedef name:
  // `T x`, `T *x;`, `T **x = ...`.
  bool looks_like_declaration() const {
    if (starts_type(cur())) return true;
    if (cur().kind != TokenKind::Identifier) return false;
    std::size_t k = 1;
    if (ahead(k).kind == TokenKind::Identifier) return true;
    if (ahead(k).text != "*") return false;
    while (ahead(k).text == "*") ++k;
    if (ahead(k).kind != TokenKind::Identifier) return false;
    const auto& follow = ahead(k + 1).text;
    return follow == ";" || follow == "=" || follow == "," || follow == "[" || follow == ")";
  }

  DeclSpec decl_specifiers() {
    DeclSpec spec;
    std::string words;
    auto add = [&](const std::string& w) {
      if (!words.empty()) words += " ";
      words += w;
    };
    bool saw_type = false;
    while (true) {
      if (accept("typedef")) {
        spec.is_typedef = true;
      } else if (cur().kind == TokenKind::Keyword && is_storage_word(cur().text)) {
        ++pos_;
      } else if (accept("struct")) {
        std::string tag = cur().kind == TokenKind::Identifier ? expect_identifier() : "";
        if (is("{")) skip_braces();
        add("struct " + tag);
        saw_type = true;
      } else if (cur().kind == TokenKind::Keyword && is_type_keyword(cur().text)) {
        add(toks_[pos_++].text);
        saw_type = true;
      } else if (!saw_type && cur().kind == TokenKind::Identifier) {
        add(toks_[pos_++].text);
        saw_type = true;
      } else {
        break;
      }
    }
    if (!saw_type) fail("expected a type");
    spec.base_type = words;
    return spec;
  }

  void skip_braces() {
    int depth = 0;
    do {
      if (at_end()) fail("unbalanced braces");
      if (is("{")) ++depth;
      if (is("}")) --depth;
      ++pos_;
    } while (depth > 0);
  }

  // -- top level ----------------------------------------------------------

  std::optional<AstTree> top_level() {
    const std::size_t first = pos_;
    DeclSpec spec = decl_specifiers();
    if (accept(";")) return std::nullopt;  // struct definition or forward declaration
    if (spec.is_typedef) {
      std::string last;
      while (!at_end() && !is(";")) {
        if (cur().kind == TokenKind::Identifier) last = cur().text;
        if (is("(")) {
          fail("function pointer typedefs are not supported");
        }
        ++pos_;
      }
      expect(";");
      if (!last.empty()) typedefs_.insert(last);
      return std::nullopt;
    }
    int depth = 0;
    while (accept("*")) ++depth;
    std::string name = expect_identifier();
    if (!is("(")) {
      // global variable(s); skip to the terminating semicolon
      while (!at_end() && !is(";")) {
        if (is("{")) {
          skip_braces();
        } else {
          ++pos_;
        }
      }
      expect(";");
      return std::nullopt;
    }
    expect("(");
    std::vector<AstNode> params;
    if (!(is("void") && ahead(1).text == ")") && !is(")")) {
      do {
        if (is("...")) fail("variadic functions are not supported");
        params.push_back(parameter());
      } while (accept(","));
    } else {
      accept("void");
    }
    expect(")");
    if (accept(";")) return std::nullopt;  // prototype
    if (!is("{")) fail("expected function body");
    for (const auto& p : params) {
      if (p.text.empty()) fail("parameters of a function definition must be named");
    }
    const std::size_t body_first = pos_;
    AstNode body = compound();
    AstTree tree;
    tree.function_name = name;
    tree.token_count = pos_ - body_first;
    tree.root.kind = NodeKind::FunctionDef;
    tree.root.text = name;
    tree.root.decl.base_type = spec.base_type;
    tree.root.decl.pointer_depth = depth;
    tree.root.span = span_of(first, pos_ - 1);
    for (auto& p : params) tree.root.children.push_back(std::move(p));
    tree.root.children.push_back(std::move(body));
    renumber(tree.root);
    return tree;
  }

  AstNode parameter() {
    const std::size_t first = pos_;
    DeclSpec spec = decl_specifiers();
    AstNode p;
    p.kind = NodeKind::Param;
    p.decl.base_type = spec.base_type;
    while (accept("*")) ++p.decl.pointer_depth;
    if (cur().kind == TokenKind::Identifier) p.text = expect_identifier();  // unnamed in prototypes
    while (accept("[")) {
      ++p.decl.array_rank;
      if (!is("]")) p.children.push_back(expression());
      expect("]");
    }
    p.span = span_of(first, pos_ - 1);
    return p;
  }

  // -- statements ---------------------------------------------------------

  AstNode compound() {
    const std::size_t first = pos_;
    expect("{");
    std::vector<AstNode> items;
    while (!is("}")) {
      if (at_end()) fail("unterminated block");
      statement(items);
    }
    expect("}");
    AstNode n = make(NodeKind::Compound, "", first);
    n.children = std::move(items);
    return n;
  }

  // Appends zero (empty statement), one, or several (multi-declarator) nodes.
  void statement(std::vector<AstNode>& out) {
    if (accept(";")) return;
    if (is("{")) {
      out.push_back(compound());
      return;
    }
    if (cur().kind == TokenKind::Keyword) {
      const std::string& kw = cur().text;
      if (kw == "for") return out.push_back(for_statement());
      if (kw == "while") return out.push_back(while_statement());
      if (kw == "if") return out.push_back(if_statement());
      if (kw == "return") return out.push_back(return_statement());
      if (kw == "break" || kw == "continue" || kw == "do") {
        fail("'" + kw + "' is outside the supported subset");
      }
    }
    if (cur().kind == TokenKind::Identifier && ahead(1).text == ":") fail("labels are not supported");
    if (looks_like_declaration()) {
      declaration(out);
      expect(";");
      return;
    }
    out.push_back(expression());
    expect(";");
  }

  // A single-statement body; multi-declarators in that position are wrapped.
  AstNode sub_statement() {
    std::vector<AstNode> items;
    const std::size_t first = pos_;
    statement(items);
    if (items.size() == 1) return std::move(items.front());
    AstNode n = make(NodeKind::Compound, "", first);
    n.children = std::move(items);
    return n;
  }

  void declaration(std::vector<AstNode>& out) {
    const std::size_t first = pos_;
    DeclSpec spec = decl_specifiers();
    if (spec.is_typedef) fail("local typedefs are not supported");
    bool first_declarator = true;
    do {
      const std::size_t decl_first = first_declarator ? first : pos_;
      first_declarator = false;
      AstNode d;
      d.kind = NodeKind::Decl;
      d.decl.base_type = spec.base_type;
      while (accept("*")) ++d.decl.pointer_depth;
      if (is("(")) fail("function pointers are not supported");
      d.text = expect_identifier();
      while (accept("[")) {
        ++d.decl.array_rank;
        if (!is("]")) d.children.push_back(expression());
        expect("]");
      }
      if (accept("=")) {
        if (is("{")) fail("initializer lists are not supported");
        d.decl.has_init = true;
        d.children.push_back(assignment());
      }
      d.span = span_of(decl_first, pos_ - 1);
      out.push_back(std::move(d));
    } while (accept(","));
  }

  AstNode for_statement() {
    const std::size_t first = pos_;
    expect("for");
    expect("(");
    AstNode n;
    n.kind = NodeKind::For;
    if (!is(";")) {
      if (looks_like_declaration()) {
        std::vector<AstNode> decls;
        declaration(decls);
        for (auto& d : decls) n.children.push_back(std::move(d));
      } else {
        n.children.push_back(expression());
        while (accept(",")) n.children.push_back(expression());
      }
    }
    n.for_parts.init = static_cast<std::uint8_t>(n.children.size());
    expect(";");
    if (!is(";")) {
      n.children.push_back(expression());
      n.for_parts.cond = 1;
    }
    expect(";");
    if (!is(")")) {
      n.children.push_back(expression());
      ++n.for_parts.next;
      while (accept(",")) {
        n.children.push_back(expression());
        ++n.for_parts.next;
      }
    }
    expect(")");
    n.children.push_back(sub_statement());
    n.span = span_of(first, pos_ - 1);
    return n;
  }

  AstNode while_statement() {
    const std::size_t first = pos_;
    expect("while");
    expect("(");
    AstNode n;
    n.kind = NodeKind::While;
    n.children.push_back(expression());
    expect(")");
    n.children.push_back(sub_statement());
    n.span = span_of(first, pos_ - 1);
    return n;
  }

  AstNode if_statement() {
    const std::size_t first = pos_;
    expect("if");
    expect("(");
    AstNode n;
    n.kind = NodeKind::If;
    n.children.push_back(expression());
    expect(")");
    n.children.push_back(sub_statement());
    if (accept("else")) n.children.push_back(sub_statement());
    n.span = span_of(first, pos_ - 1);
    return n;
  }

  AstNode return_statement() {
    const std::size_t first = pos_;
    expect("return");
    AstNode n;
    n.kind = NodeKind::Return;
    if (!is(";")) n.children.push_back(expression());
    expect(";");
    n.span = span_of(first, pos_ - 1);
    return n;
  }

  // -- expressions --------------------------------------------------------

  // Comma operators are only accepted in for headers, where the caller splits them.
  AstNode expression() { return assignment(); }

  AstNode assignment() {
    const std::size_t first = pos_;
    AstNode lhs = binary(1);
    if (is("?")) fail("conditional expressions are not supported");
    if (cur().kind == TokenKind::Punct && is_assign_op(cur().text)) {
      const std::string op = toks_[pos_++].text;
      AstNode rhs = assignment();
      AstNode n = make(NodeKind::Assignment, "=", first);
      if (op != "=") {
        AstNode bin;
        bin.kind = NodeKind::BinaryOp;
        bin.text = op.substr(0, op.size() - 1);
        bin.span = n.span;
        bin.children.push_back(lhs);
        bin.children.push_back(std::move(rhs));
        n.children.push_back(std::move(lhs));
        n.children.push_back(std::move(bin));
      } else {
        n.children.push_back(std::move(lhs));
        n.children.push_back(std::move(rhs));
      }
      return n;
    }
    return lhs;
  }

  AstNode binary(int min_prec) {
    const std::size_t first = pos_;
    AstNode lhs = unary();
    while (cur().kind == TokenKind::Punct) {
      auto it = binary_ops().find(cur().text);
      if (it == binary_ops().end() || it->second < min_prec) break;
      const int prec = it->second;
      const std::string op = toks_[pos_++].text;
      AstNode rhs = binary(prec + 1);
      AstNode n = make(NodeKind::BinaryOp, op, first);
      n.children.push_back(std::move(lhs));
      n.children.push_back(std::move(rhs));
      lhs = std::move(n);
    }
    return lhs;
  }

  bool at_cast() const {
    if (!is("(")) return false;
    const Token& t = ahead(1);
    if (t.kind == TokenKind::Keyword && (is_type_keyword(t.text) || is_storage_word(t.text))) {
      return true;
    }
    if (t.kind != TokenKind::Identifier) return false;
    std::size_t k = 2;
    const bool known = is_typedef_name(t);
    if (ahead(k).text != "*" && !known) return false;
    while (ahead(k).text == "*") ++k;
    return ahead(k).text == ")";
  }

  void skip_type_name() {
    expect("(");
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("unterminated cast");
      if (is("(")) ++depth;
      if (is(")")) --depth;
      ++pos_;
    }
  }

  AstNode unary() {
    const std::size_t first = pos_;
    if (cur().kind == TokenKind::Punct) {
      const std::string t = cur().text;
      if (t == "++" || t == "--" || t == "-" || t == "+" || t == "!" || t == "~" || t == "&") {
        ++pos_;
        AstNode operand = unary();
        AstNode n = make(NodeKind::UnaryOp, t, first);
        n.children.push_back(std::move(operand));
        return n;
      }
      if (t == "*") {
        ++pos_;
        AstNode operand = unary();
        AstNode n = make(NodeKind::Deref, "*", first);
        n.children.push_back(std::move(operand));
        return n;
      }
      if (at_cast()) {
        skip_type_name();
        return unary();
      }
    }
    if (is("sizeof")) {
      ++pos_;
      AstNode n;
      n.kind = NodeKind::Call;
      n.text = "sizeof";
      if (is("(") && (starts_type(ahead(1)) || at_cast() ||
                      (ahead(1).kind == TokenKind::Identifier && ahead(2).text == ")"))) {
        const std::size_t arg_first = pos_ + 1;
        expect("(");
        std::string words;
        while (!is(")")) {
          if (at_end()) fail("unterminated sizeof");
          if (!words.empty()) words += " ";
          words += toks_[pos_++].text;
        }
        AstNode id;
        id.kind = NodeKind::ID;
        id.text = words;
        id.span = span_of(arg_first, pos_ - 1);
        expect(")");
        n.children.push_back(std::move(id));
      } else {
        n.children.push_back(unary());
      }
      n.span = span_of(first, pos_ - 1);
      return n;
    }
    return postfix();
  }

  AstNode postfix() {
    const std::size_t first = pos_;
    AstNode e = primary();
    while (true) {
      if (accept("[")) {
        AstNode idx = expression();
        expect("]");
        AstNode n = make(NodeKind::ArrayRef, "", first);
        n.children.push_back(std::move(e));
        n.children.push_back(std::move(idx));
        e = std::move(n);
      } else if (is("(")) {
        if (e.kind != NodeKind::ID) fail("only direct calls are supported");
        ++pos_;
        AstNode n;
        n.kind = NodeKind::Call;
        n.text = e.text;
        if (!is(")")) {
          do {
            n.children.push_back(assignment());
          } while (accept(","));
        }
        expect(")");
        n.span = span_of(first, pos_ - 1);
        e = std::move(n);
      } else if (is("->") || is(".")) {
        const std::string op = toks_[pos_++].text;
        const std::size_t member_tok = pos_;
        AstNode member;
        member.kind = NodeKind::ID;
        member.text = expect_identifier();
        member.span = span_of(member_tok, member_tok);
        AstNode n = make(NodeKind::StructRef, op, first);
        n.children.push_back(std::move(e));
        n.children.push_back(std::move(member));
        e = std::move(n);
      } else if (is("++") || is("--")) {
        const std::string op = "p" + toks_[pos_++].text;
        AstNode n = make(NodeKind::UnaryOp, op, first);
        n.children.push_back(std::move(e));
        e = std::move(n);
      } else {
        break;
      }
    }
    return e;
  }

  AstNode primary() {
    const std::size_t first = pos_;
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::Identifier: {
        ++pos_;
        return make(NodeKind::ID, t.text, first);
      }
      case TokenKind::Number:
      case TokenKind::CharLiteral: {
        ++pos_;
        return make(NodeKind::Constant, t.text, first);
      }
      case TokenKind::StringLiteral: {
        std::string text = toks_[pos_++].text;
        while (cur().kind == TokenKind::StringLiteral) {
          text = text.substr(0, text.size() - 1) + toks_[pos_++].text.substr(1);
        }
        return make(NodeKind::Constant, text, first);
      }
      default:
        break;
    }
    if (accept("(")) {
      AstNode e = expression();
      expect(")");
      return e;
    }
    if (at_end()) fail("unexpected end of input");
    fail("unexpected token '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
  std::set<std::string> typedefs_;
};

}  // namespace

std::vector<AstTree> parse_translation_unit(std::string_view source_text, const std::string& file) {
  return Parser(tokenize(source_text, file), file).run();
}

}  // namespace clone_lattice
