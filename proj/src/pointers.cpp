#include "clone_lattice/pointers.hpp"

#include <set>

#include "clone_lattice/expr_utils.hpp"

namespace clone_lattice {

namespace {

PointerDecl from_declarator(const AstNode& n, const std::string& fn) {
  PointerDecl p;
  p.name = n.text;
  p.declared_in = fn;
  p.base_type = n.decl.base_type;
  p.is_parameter = n.kind == NodeKind::Param;
  p.depth = n.decl.pointer_depth + n.decl.array_rank;
  p.span = n.span;
  return p;
}

}  // namespace

std::vector<PointerDecl> enumerate_pointers(const AstTree& ast) {
  std::vector<PointerDecl> out;
  std::set<std::string> names;
  for (const auto& c : ast.root.children) {
    if (c.kind == NodeKind::Param && c.decl.is_pointer_like()) {
      out.push_back(from_declarator(c, ast.function_name));
      names.insert(c.text);
    }
  }
  visit_preorder(ast.root, [&](const AstNode& n) {
    if (n.kind == NodeKind::Decl && n.decl.is_pointer_like()) {
      out.push_back(from_declarator(n, ast.function_name));
      names.insert(n.text);
    }
  });
  // member chains used as pointers; plain identifiers must be declared
  visit_preorder(ast.root, [&](const AstNode& n) {
    if (n.kind != NodeKind::ArrayRef && n.kind != NodeKind::Deref && n.kind != NodeKind::StructRef) {
      return;
    }
    for (const auto& access : collect_accesses(n)) {
      if (access.node != &n) continue;
      if (access.base.find("->") == std::string::npos && access.base.find('.') == std::string::npos) {
        continue;
      }
      if (!names.insert(access.base).second) continue;
      PointerDecl p;
      p.name = access.base;
      p.declared_in = ast.function_name;
      p.is_member_chain = true;
      p.depth = static_cast<int>(access.indices.size());
      p.span = n.span;
      out.push_back(std::move(p));
    }
  });
  return out;
}

}  // namespace clone_lattice
