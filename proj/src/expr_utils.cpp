#include "clone_lattice/expr_utils.hpp"

#include <algorithm>

namespace clone_lattice {

namespace {

void push_unique(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

void accesses_into(const AstNode& e, std::vector<Access>& out);

// Root of a subscript chain p[i][j] and its indices in source order.
const AstNode* flatten_subscripts(const AstNode& e, std::vector<const AstNode*>& indices) {
  const AstNode* base = &e;
  std::vector<const AstNode*> rev;
  while (base->kind == NodeKind::ArrayRef) {
    rev.push_back(&base->children[1]);
    base = &base->children[0];
  }
  indices.assign(rev.rbegin(), rev.rend());
  return base;
}

void subscript_access(const AstNode& e, std::vector<const AstNode*> extra, std::vector<Access>& out,
                      const AstNode& site) {
  std::vector<const AstNode*> indices;
  const AstNode* base = flatten_subscripts(e, indices);
  for (auto* x : extra) indices.push_back(x);
  if (auto name = chain_name(*base)) {
    out.push_back(Access{*name, indices, &site});
    if (base->kind == NodeKind::StructRef) accesses_into(*base, out);
  } else {
    accesses_into(*base, out);
  }
  for (const auto* idx : indices) {
    if (idx) accesses_into(*idx, out);
  }
}

void accesses_into(const AstNode& e, std::vector<Access>& out) {
  switch (e.kind) {
    case NodeKind::ArrayRef:
      subscript_access(e, {}, out, e);
      return;
    case NodeKind::Deref: {
      const AstNode& op = e.children[0];
      if (auto name = chain_name(op)) {
        out.push_back(Access{*name, {nullptr}, &e});
        if (op.kind == NodeKind::StructRef) accesses_into(op, out);
        return;
      }
      if (op.kind == NodeKind::BinaryOp && (op.text == "+" || op.text == "-")) {
        if (auto name = chain_name(op.children[0]); name && op.text == "+") {
          out.push_back(Access{*name, {&op.children[1]}, &e});
          accesses_into(op.children[1], out);
          return;
        }
        if (auto name = chain_name(op.children[1]); name && op.text == "+") {
          out.push_back(Access{*name, {&op.children[0]}, &e});
          accesses_into(op.children[0], out);
          return;
        }
      }
      if (op.kind == NodeKind::ArrayRef) {
        subscript_access(op, {nullptr}, out, e);
        return;
      }
      accesses_into(op, out);
      return;
    }
    case NodeKind::StructRef: {
      const AstNode& base = e.children[0];
      if (e.text == "->") {
        if (auto name = chain_name(base)) {
          out.push_back(Access{*name, {nullptr}, &e});
          if (base.kind == NodeKind::StructRef) accesses_into(base, out);
          return;
        }
        if (base.kind == NodeKind::ArrayRef) {
          subscript_access(base, {nullptr}, out, e);
          return;
        }
      }
      accesses_into(base, out);
      return;
    }
    default:
      for (const auto& c : e.children) accesses_into(c, out);
      return;
  }
}

void identifiers_into(const AstNode& e, std::vector<std::string>& out) {
  if (auto name = chain_name(e)) {
    push_unique(out, *name);
    return;
  }
  switch (e.kind) {
    case NodeKind::Call:
      push_unique(out, expression_text(e));
      return;
    case NodeKind::StructRef:
      identifiers_into(e.children[0], out);
      return;
    case NodeKind::Constant:
      return;
    default:
      for (const auto& c : e.children) identifiers_into(c, out);
      return;
  }
}

void value_sources_into(const AstNode& e, std::vector<std::string>& out) {
  if (auto name = chain_name(e)) {
    push_unique(out, *name);
    return;
  }
  switch (e.kind) {
    case NodeKind::Constant:
    case NodeKind::Call:
      return;
    case NodeKind::ArrayRef: {
      std::vector<const AstNode*> idx;
      const AstNode* base = flatten_subscripts(e, idx);
      value_sources_into(*base, out);
      return;
    }
    case NodeKind::Deref: {
      const AstNode& op = e.children[0];
      if (op.kind == NodeKind::BinaryOp && op.text == "+") {
        if (chain_name(op.children[0])) return value_sources_into(op.children[0], out);
        if (chain_name(op.children[1])) return value_sources_into(op.children[1], out);
      }
      value_sources_into(op, out);
      return;
    }
    case NodeKind::StructRef:
      value_sources_into(e.children[0], out);
      return;
    case NodeKind::Assignment: {
      if (auto t = write_target(e.children[0])) push_unique(out, t->name);
      return;
    }
    case NodeKind::UnaryOp:
      if (e.text == "&") return value_sources_into(e.children[0], out);
      [[fallthrough]];
    default:
      for (const auto& c : e.children) value_sources_into(c, out);
      return;
  }
}

void writes_into(const AstNode& e, std::vector<WriteTarget>& out) {
  switch (e.kind) {
    case NodeKind::Assignment:
      if (auto t = write_target(e.children[0])) out.push_back(*t);
      writes_into(e.children[1], out);
      return;
    case NodeKind::UnaryOp:
      if (e.text == "++" || e.text == "--" || e.text == "p++" || e.text == "p--") {
        if (auto t = write_target(e.children[0])) out.push_back(*t);
        return;
      }
      writes_into(e.children[0], out);
      return;
    case NodeKind::Call:
      for (const auto& arg : e.children) {
        if (arg.kind == NodeKind::UnaryOp && arg.text == "&") {
          if (auto t = write_target(arg.children[0])) out.push_back(*t);
        } else {
          writes_into(arg, out);
        }
      }
      return;
    default:
      for (const auto& c : e.children) writes_into(c, out);
      return;
  }
}

}  // namespace

std::optional<std::string> chain_name(const AstNode& expr) {
  if (expr.kind == NodeKind::ID) return expr.text;
  if (expr.kind == NodeKind::StructRef) {
    if (auto base = chain_name(expr.children[0])) return *base + expr.text + expr.children[1].text;
  }
  return std::nullopt;
}

std::vector<Access> collect_accesses(const AstNode& expr) {
  std::vector<Access> out;
  accesses_into(expr, out);
  return out;
}

bool dereferences(const AstNode& expr, const std::string& pointer) {
  for (const auto& a : collect_accesses(expr)) {
    if (a.base == pointer) return true;
  }
  return false;
}

std::vector<std::string> identifiers_in(const AstNode& expr) {
  std::vector<std::string> out;
  identifiers_into(expr, out);
  return out;
}

std::vector<std::string> value_sources(const AstNode& expr) {
  std::vector<std::string> out;
  value_sources_into(expr, out);
  return out;
}

std::optional<WriteTarget> write_target(const AstNode& lvalue) {
  // p->f = x writes the member chain, which is its own variable
  if (auto name = chain_name(lvalue)) return WriteTarget{*name, false};
  auto accesses = collect_accesses(lvalue);
  if (!accesses.empty()) return WriteTarget{accesses.front().base, true};
  return std::nullopt;
}

std::vector<WriteTarget> writes_in(const AstNode& expr) {
  std::vector<WriteTarget> out;
  writes_into(expr, out);
  return out;
}

bool is_comparison(const AstNode& expr) {
  if (expr.kind != NodeKind::BinaryOp) return false;
  const auto& t = expr.text;
  return t == "<" || t == ">" || t == "<=" || t == ">=" || t == "==" || t == "!=";
}

}  // namespace clone_lattice
