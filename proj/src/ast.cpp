#include "clone_lattice/ast.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace clone_lattice {

std::string_view node_kind_name(NodeKind kind) {
  static constexpr std::array<std::string_view, kNodeKindCount> kNames = {
      "ID",     "Constant", "ArrayRef", "Assignment", "StructRef", "BinaryOp",
      "UnaryOp", "Compound", "For",     "While",      "If",        "Call",
      "Return", "Decl",     "Deref",    "FunctionDef", "Param"};
  return kNames.at(static_cast<std::size_t>(kind));
}

bool SourceSpan::contains(const SourceSpan& other) const {
  auto before = [](int l1, int c1, int l2, int c2) { return l1 < l2 || (l1 == l2 && c1 <= c2); };
  return before(line_start, col_start, other.line_start, other.col_start) &&
         before(other.line_end, other.col_end, line_end, col_end);
}

std::size_t AstNode::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

const AstNode& AstTree::body() const {
  if (root.children.empty() || root.children.back().kind != NodeKind::Compound) {
    throw std::logic_error("function without body: " + function_name);
  }
  return root.children.back();
}

namespace {

void renumber_from(AstNode& node, std::uint32_t& next) {
  node.id = next++;
  for (auto& c : node.children) renumber_from(c, next);
}

}  // namespace

void renumber(AstNode& root) {
  std::uint32_t next = 0;
  renumber_from(root, next);
}

void visit_preorder(const AstNode& node, const std::function<void(const AstNode&)>& fn) {
  fn(node);
  for (const auto& c : node.children) visit_preorder(c, fn);
}

void visit_postorder(const AstNode& node, const std::function<void(const AstNode&)>& fn) {
  for (const auto& c : node.children) visit_postorder(c, fn);
  fn(node);
}

std::vector<NodeKind> postorder_kinds(const AstNode& node) {
  std::vector<NodeKind> out;
  out.reserve(node.size());
  visit_postorder(node, [&](const AstNode& n) { out.push_back(n.kind); });
  return out;
}

bool is_control_kind(NodeKind kind) {
  return kind == NodeKind::For || kind == NodeKind::While || kind == NodeKind::If;
}

std::vector<std::size_t> header_child_indices(const AstNode& node) {
  std::vector<std::size_t> out;
  switch (node.kind) {
    case NodeKind::For: {
      const std::size_t n = node.for_parts.init + node.for_parts.cond + node.for_parts.next;
      for (std::size_t i = 0; i < n; ++i) out.push_back(i);
      break;
    }
    case NodeKind::While:
    case NodeKind::If:
      out.push_back(0);
      break;
    default:
      break;
  }
  return out;
}

std::vector<std::size_t> body_child_indices(const AstNode& node) {
  std::vector<std::size_t> out;
  switch (node.kind) {
    case NodeKind::For:
      out.push_back(node.children.size() - 1);
      break;
    case NodeKind::While:
      out.push_back(1);
      break;
    case NodeKind::If:
      for (std::size_t i = 1; i < node.children.size(); ++i) out.push_back(i);
      break;
    case NodeKind::Compound:
      for (std::size_t i = 0; i < node.children.size(); ++i) out.push_back(i);
      break;
    default:
      break;
  }
  return out;
}

namespace {

int binary_precedence(std::string_view op) {
  static const std::unordered_map<std::string_view, int> kPrec = {
      {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6}, {"!=", 6},
      {"<", 7},  {">", 7},  {"<=", 7}, {">=", 7}, {"<<", 8}, {">>", 8}, {"+", 9},
      {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}};
  auto it = kPrec.find(op);
  return it == kPrec.end() ? 0 : it->second;
}

// Precedence of an expression node as an operand; higher binds tighter.
int expression_precedence(const AstNode& e) {
  switch (e.kind) {
    case NodeKind::Assignment:
      return 0;
    case NodeKind::BinaryOp:
      return binary_precedence(e.text);
    case NodeKind::UnaryOp:
      return (e.text == "p++" || e.text == "p--") ? 13 : 12;
    case NodeKind::Deref:
      return 12;
    default:
      return 14;
  }
}

std::string declarator_text(const AstNode& n) {
  std::string out = n.decl.base_type + " ";
  out += std::string(static_cast<std::size_t>(n.decl.pointer_depth), '*');
  out += n.text;
  for (int r = 0; r < n.decl.array_rank; ++r) {
    if (static_cast<std::size_t>(r) < n.children.size() - (n.decl.has_init ? 1 : 0)) {
      out += "[" + expression_text(n.children[static_cast<std::size_t>(r)]) + "]";
    } else {
      out += "[]";
    }
  }
  if (n.decl.has_init) out += " = " + expression_text(n.children.back());
  return out;
}

std::string operand(const AstNode& child, int parent_prec, bool right_side) {
  const int p = expression_precedence(child);
  const bool wrap = p < parent_prec || (right_side && p == parent_prec && p < 12);
  std::string s = expression_text(child);
  return wrap ? "(" + s + ")" : s;
}

}  // namespace

std::string expression_text(const AstNode& e) {
  switch (e.kind) {
    case NodeKind::ID:
    case NodeKind::Constant:
      return e.text;
    case NodeKind::ArrayRef:
      return operand(e.children[0], 13, false) + "[" + expression_text(e.children[1]) + "]";
    case NodeKind::StructRef:
      return operand(e.children[0], 13, false) + e.text + e.children[1].text;
    case NodeKind::Assignment:
      return expression_text(e.children[0]) + " " + e.text + " " + operand(e.children[1], 0, true);
    case NodeKind::BinaryOp: {
      const int p = binary_precedence(e.text);
      return operand(e.children[0], p, false) + " " + e.text + " " + operand(e.children[1], p, true);
    }
    case NodeKind::UnaryOp:
      if (e.text == "p++" || e.text == "p--") {
        return operand(e.children[0], 13, false) + e.text.substr(1);
      }
      return e.text + operand(e.children[0], 12, false);
    case NodeKind::Deref:
      return "*" + operand(e.children[0], 12, false);
    case NodeKind::Call: {
      std::string out = e.text + "(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        out += expression_text(e.children[i]);
      }
      return out + ")";
    }
    case NodeKind::Decl:
    case NodeKind::Param:
      return declarator_text(e);
    default:
      throw std::logic_error("not an expression: " + std::string(node_kind_name(e.kind)));
  }
}

namespace {

void print_statement(const AstNode& n, int indent, std::ostringstream& os, bool inline_start = false);

void print_body(const AstNode& body, int indent, std::ostringstream& os) {
  if (body.kind == NodeKind::Compound) {
    os << " ";
    print_statement(body, indent, os, true);
  } else {
    os << "\n";
    print_statement(body, indent + 1, os);
  }
}

void print_statement(const AstNode& n, int indent, std::ostringstream& os, bool inline_start) {
  const std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
  const std::string lead = inline_start ? "" : pad;
  switch (n.kind) {
    case NodeKind::Compound:
      os << lead << "{\n";
      for (const auto& c : n.children) print_statement(c, indent + 1, os);
      os << pad << "}\n";
      break;
    case NodeKind::For: {
      os << lead << "for (";
      std::size_t i = 0;
      for (std::size_t k = 0; k < n.for_parts.init; ++k, ++i) {
        if (k) os << ", ";
        os << expression_text(n.children[i]);
      }
      os << ";";
      if (n.for_parts.cond) os << " " << expression_text(n.children[i++]);
      os << ";";
      for (std::size_t k = 0; k < n.for_parts.next; ++k, ++i) {
        os << (k ? ", " : " ") << expression_text(n.children[i]);
      }
      os << ")";
      print_body(n.children.back(), indent, os);
      break;
    }
    case NodeKind::While:
      os << lead << "while (" << expression_text(n.children[0]) << ")";
      print_body(n.children[1], indent, os);
      break;
    case NodeKind::If:
      os << lead << "if (" << expression_text(n.children[0]) << ")";
      print_body(n.children[1], indent, os);
      if (n.children.size() > 2) {
        os << pad << "else";
        print_body(n.children[2], indent, os);
      }
      break;
    case NodeKind::Return:
      os << lead << "return";
      if (!n.children.empty()) os << " " << expression_text(n.children[0]);
      os << ";\n";
      break;
    case NodeKind::FunctionDef: {
      os << lead << n.decl.base_type << " " << std::string(static_cast<std::size_t>(n.decl.pointer_depth), '*')
         << n.text << "(";
      bool first = true;
      for (const auto& c : n.children) {
        if (c.kind != NodeKind::Param) continue;
        if (!first) os << ", ";
        first = false;
        os << expression_text(c);
      }
      os << ")\n";
      print_statement(n.children.back(), indent, os);
      break;
    }
    default:
      os << lead << expression_text(n) << ";\n";
      break;
  }
}

}  // namespace

std::string pretty_print(const AstNode& node, int indent) {
  std::ostringstream os;
  print_statement(node, indent, os);
  return os.str();
}

bool same_shape(const AstNode& a, const AstNode& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size() || !(a.for_parts == b.for_parts)) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_shape(a.children[i], b.children[i])) return false;
  }
  return true;
}

}  // namespace clone_lattice
