#include "clone_lattice/slicer.hpp"

#include <map>
#include <sstream>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/expr_utils.hpp"
#include "clone_lattice/lexer.hpp"

namespace clone_lattice {

std::string PointerSlice::id() const {
  return slice_tree.root.span.file + ":" + origin + ":" + pointer.name;
}

namespace {

// Calls fn(statement) for every statement-position node, including control
// nodes, but not their header expressions.
void for_each_statement(const AstNode& n, const std::function<void(const AstNode&)>& fn) {
  if (n.kind == NodeKind::Compound) {
    for (const auto& c : n.children) for_each_statement(c, fn);
    return;
  }
  fn(n);
  for (auto i : body_child_indices(n)) for_each_statement(n.children[i], fn);
}

std::vector<const AstNode*> header_parts(const AstNode& s) {
  std::vector<const AstNode*> out;
  if (is_control_kind(s.kind)) {
    for (auto i : header_child_indices(s)) out.push_back(&s.children[i]);
  } else {
    out.push_back(&s);
  }
  return out;
}

bool writes_any(const AstNode& s, const RelatedVariableSet& related) {
  auto relevant = [&](const std::string& name) {
    return name == related.pointer.name || related.contains(name);
  };
  if (s.kind == NodeKind::Decl) return relevant(s.text);
  for (const auto* part : header_parts(s)) {
    if (part->kind == NodeKind::Decl) {
      if (relevant(part->text)) return true;
      continue;
    }
    for (const auto& w : writes_in(*part)) {
      if (!w.through_pointer && relevant(w.name)) return true;
    }
  }
  return false;
}

bool derefs_pointer(const AstNode& s, const std::string& pointer) {
  for (const auto* part : header_parts(s)) {
    if (dereferences(*part, pointer)) return true;
  }
  return false;
}

void parents_of(const AstNode& n, const AstNode* parent, std::map<std::uint32_t, const AstNode*>& out) {
  out[n.id] = parent;
  for (const auto& c : n.children) parents_of(c, &n, out);
}

std::string header_text(const AstNode& s) {
  switch (s.kind) {
    case NodeKind::For: {
      std::string out = "for (";
      std::size_t i = 0;
      for (std::size_t k = 0; k < s.for_parts.init; ++k, ++i) {
        if (k) out += ", ";
        out += expression_text(s.children[i]);
      }
      out += ";";
      if (s.for_parts.cond) out += " " + expression_text(s.children[i++]);
      out += ";";
      for (std::size_t k = 0; k < s.for_parts.next; ++k, ++i) {
        out += (k ? ", " : " ") + expression_text(s.children[i]);
      }
      return out + ")";
    }
    case NodeKind::While:
      return "while (" + expression_text(s.children[0]) + ")";
    case NodeKind::If:
      return "if (" + expression_text(s.children[0]) + ")";
    case NodeKind::Return:
      return s.children.empty() ? "return;" : "return " + expression_text(s.children[0]) + ";";
    default:
      return expression_text(s) + ";";
  }
}

AstNode empty_block(const SourceSpan& span) {
  AstNode b;
  b.kind = NodeKind::Compound;
  b.span = span;
  return b;
}

bool contains_kept(const AstNode& n, const StatementSet& kept) {
  if (kept.count(n.id)) return true;
  for (const auto& c : n.children) {
    if (contains_kept(c, kept)) return true;
  }
  return false;
}

AstNode prune(const AstNode& n, const StatementSet& kept);

// Body position: a kept statement, a pruned block, or an empty block.
AstNode prune_body(const AstNode& body, const StatementSet& kept) {
  if (body.kind == NodeKind::Compound) return prune(body, kept);
  if (kept.count(body.id)) return prune(body, kept);
  return empty_block(body.span);
}

AstNode prune(const AstNode& n, const StatementSet& kept) {
  if (n.kind == NodeKind::Compound) {
    AstNode out = n;
    out.children.clear();
    for (const auto& c : n.children) {
      if (c.kind == NodeKind::Compound) {
        if (contains_kept(c, kept)) out.children.push_back(prune(c, kept));
      } else if (kept.count(c.id)) {
        out.children.push_back(prune(c, kept));
      }
    }
    return out;
  }
  if (!is_control_kind(n.kind)) return n;
  AstNode out = n;
  for (auto i : body_child_indices(n)) out.children[i] = prune_body(n.children[i], kept);
  if (n.kind == NodeKind::If && out.children.size() == 3 && out.children[2].kind == NodeKind::Compound &&
      out.children[2].children.empty() && !contains_kept(n.children[2], kept)) {
    out.children.pop_back();
  }
  return out;
}

// drops for-loop init/step expressions that only write unrelated names
void trim_for_headers(AstNode& n, const RelatedVariableSet& related) {
  for (auto& c : n.children) trim_for_headers(c, related);
  if (n.kind != NodeKind::For) return;
  auto keep = [&](const AstNode& e) {
    if (dereferences(e, related.pointer.name)) return true;
    const auto writes = writes_in(e);
    if (writes.empty()) return true;
    for (const auto& w : writes) {
      if (w.name == related.pointer.name || related.contains(w.name)) return true;
    }
    return false;
  };
  std::vector<AstNode> kids;
  ForParts parts{0, n.for_parts.cond, 0};
  std::size_t i = 0;
  for (std::size_t k = 0; k < n.for_parts.init; ++k, ++i) {
    if (keep(n.children[i])) {
      kids.push_back(n.children[i]);
      ++parts.init;
    }
  }
  for (std::size_t k = 0; k < n.for_parts.cond; ++k, ++i) kids.push_back(n.children[i]);
  for (std::size_t k = 0; k < n.for_parts.next; ++k, ++i) {
    if (keep(n.children[i])) {
      kids.push_back(n.children[i]);
      ++parts.next;
    }
  }
  for (; i < n.children.size(); ++i) kids.push_back(n.children[i]);
  n.children = std::move(kids);
  n.for_parts = parts;
}

}  // namespace

StatementSet backward_slice(const AstTree& ast, const RelatedVariableSet& related) {
  StatementSet out;
  for_each_statement(ast.body(), [&](const AstNode& s) {
    if (writes_any(s, related) || derefs_pointer(s, related.pointer.name)) out.insert(s.id);
  });
  return out;
}

StatementSet control_closure(const AstTree& ast, const StatementSet& kept) {
  std::map<std::uint32_t, const AstNode*> parent;
  parents_of(ast.root, nullptr, parent);
  StatementSet out = kept;
  for (auto id : kept) {
    auto it = parent.find(id);
    if (it == parent.end()) continue;
    for (const AstNode* p = it->second; p; p = parent[p->id]) {
      if (is_control_kind(p->kind)) out.insert(p->id);
    }
  }
  return out;
}

std::size_t body_token_count(const AstTree& tree) {
  const std::string text = pretty_print(tree.body());
  return tokenize(text, tree.root.span.file).size() - 1;
}

PointerSlice isolate(const AstTree& ast, const PointerDecl& pointer, const RelatedVariableSet& related) {
  StatementSet kept = control_closure(ast, backward_slice(ast, related));

  bool has_deref = false;
  PointerSlice slice;
  slice.pointer = pointer;
  slice.related = related;
  slice.origin = ast.function_name;
  for_each_statement(ast.body(), [&](const AstNode& s) {
    if (!kept.count(s.id)) return;
    if (derefs_pointer(s, pointer.name)) has_deref = true;
    slice.statements.push_back(SlicedStatement{s.id, s.kind, s.span, header_text(s)});
  });
  if (!has_deref) {
    throw EmptySlice("pointer '" + pointer.name + "' is never dereferenced in " + ast.function_name);
  }

  AstTree& t = slice.slice_tree;
  t.function_name = ast.function_name;
  t.root.kind = NodeKind::FunctionDef;
  t.root.text = ast.root.text;
  t.root.decl = ast.root.decl;
  t.root.span = ast.root.span;
  for (const auto& c : ast.root.children) {
    if (c.kind == NodeKind::Param && (c.text == pointer.name || related.contains(c.text))) {
      t.root.children.push_back(c);
    }
  }
  t.root.children.push_back(prune(ast.body(), kept));
  trim_for_headers(t.root, related);
  renumber(t.root);
  t.token_count = body_token_count(t);
  return slice;
}

std::vector<PointerSlice> isolate_all(const AstTree& ast) {
  const DependencyGraph graph = build_dependency_graph(ast);
  std::vector<PointerSlice> out;
  for (const auto& p : enumerate_pointers(ast)) {
    try {
      out.push_back(isolate(ast, p, taint_pointer(graph, p)));
    } catch (const EmptySlice&) {
    }
  }
  return out;
}

std::string render_slice(const PointerSlice& slice) {
  std::ostringstream os;
  os << "// " << slice.id() << "  related: {";
  for (std::size_t i = 0; i < slice.related.variables.size(); ++i) {
    const auto& v = slice.related.variables[i];
    os << (i ? ", " : "") << v << ":" << role_name(slice.related.roles.at(v));
  }
  os << "}\n";
  for (const auto& s : slice.statements) {
    os << std::string(4 - std::min<std::size_t>(4, std::to_string(s.span.line_start).size()), ' ')
       << s.span.line_start << " | " << s.text << "\n";
  }
  return os.str();
}

}  // namespace clone_lattice
