#include "clone_lattice/dependency.hpp"

#include <algorithm>
#include <sstream>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/expr_utils.hpp"

namespace clone_lattice {

std::string_view edge_label_name(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::Assignment:
      return "assignment";
    case EdgeLabel::ArrayIndex:
      return "array-index";
    case EdgeLabel::CallArgument:
      return "call-argument";
    case EdgeLabel::Control:
      return "control";
  }
  return "?";
}

std::string_view role_name(VariableRole role) {
  switch (role) {
    case VariableRole::Index:
      return "index";
    case VariableRole::Bound:
      return "bound";
    case VariableRole::BaseOffset:
      return "base-offset";
  }
  return "?";
}

std::size_t DependencyGraph::add_node(const std::string& name) {
  auto [it, inserted] = index_.emplace(name, nodes_.size());
  if (inserted) nodes_.push_back(name);
  return it->second;
}

void DependencyGraph::add_edge(const std::string& from, const std::string& to, EdgeLabel label) {
  if (from == to) return;
  DependencyEdge e{add_node(from), add_node(to), label};
  if (edge_set_.insert(e).second) edges_.push_back(e);
}

void DependencyGraph::add_comparison(const std::string& a, const std::string& b) {
  if (a == b) return;
  comparisons_.emplace(a, b);
  comparisons_.emplace(b, a);
}

bool DependencyGraph::has_edge(const std::string& from, const std::string& to, EdgeLabel label) const {
  if (!has_node(from) || !has_node(to)) return false;
  return edge_set_.count(DependencyEdge{index_of(from), index_of(to), label}) > 0;
}

std::vector<DependencyEdge> DependencyGraph::in_edges(std::size_t node) const {
  std::vector<DependencyEdge> out;
  for (const auto& e : edges_) {
    if (e.to == node) out.push_back(e);
  }
  return out;
}

std::vector<DependencyEdge> DependencyGraph::out_edges(std::size_t node) const {
  std::vector<DependencyEdge> out;
  for (const auto& e : edges_) {
    if (e.from == node) out.push_back(e);
  }
  return out;
}

std::string DependencyGraph::to_dot() const {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(function_name) << " {\n";
  for (const auto& n : nodes_) {
    os << "  " << quote(n);
    if (pointers_.count(n)) os << " [shape=box]";
    os << ";\n";
  }
  for (const auto& e : edges_) {
    os << "  " << quote(nodes_[e.from]) << " -> " << quote(nodes_[e.to]) << " [label="
       << quote(std::string(edge_label_name(e.label))) << "];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

class GraphBuilder {
 public:
  explicit GraphBuilder(const AstTree& ast) : ast_(ast) { graph_.function_name = ast.function_name; }

  DependencyGraph run() {
    collect_nodes(ast_.root);
    for (const auto& p : enumerate_pointers(ast_)) {
      graph_.add_node(p.name);
      graph_.add_pointer(p.name);
    }
    statement(ast_.body());
    return std::move(graph_);
  }

 private:
  void collect_nodes(const AstNode& n) {
    if (auto name = chain_name(n)) {
      graph_.add_node(*name);
      return;
    }
    switch (n.kind) {
      case NodeKind::Call:
        graph_.add_node(expression_text(n));
        break;
      case NodeKind::Param:
      case NodeKind::Decl:
        graph_.add_node(n.text);
        break;
      case NodeKind::StructRef:
        collect_nodes(n.children[0]);
        return;
      default:
        break;
    }
    for (const auto& c : n.children) collect_nodes(c);
  }

  void governed_write(const std::string& target) {
    for (const auto& level : control_) {
      for (const auto& src : level) graph_.add_edge(src, target, EdgeLabel::Control);
    }
  }

  void data_edges(const AstNode& e) {
    for (const auto& access : collect_accesses(e)) {
      for (const auto* idx : access.indices) {
        if (!idx) continue;
        for (const auto& id : identifiers_in(*idx)) graph_.add_edge(id, access.base, EdgeLabel::ArrayIndex);
      }
    }
    visit_preorder(e, [&](const AstNode& n) {
      if (n.kind == NodeKind::Assignment) {
        auto target = write_target(n.children[0]);
        if (target && !target->through_pointer) {
          for (const auto& src : value_sources(n.children[1])) {
            graph_.add_edge(src, target->name, EdgeLabel::Assignment);
          }
        }
      } else if (n.kind == NodeKind::Call) {
        const std::string slot = expression_text(n);
        for (const auto& arg : n.children) {
          for (const auto& src : value_sources(arg)) graph_.add_edge(src, slot, EdgeLabel::CallArgument);
        }
      }
    });
  }

  void expression_statement(const AstNode& e) {
    data_edges(e);
    for (const auto& w : writes_in(e)) governed_write(w.name);
  }

  void condition(const AstNode& cond) {
    data_edges(cond);
    visit_preorder(cond, [&](const AstNode& n) {
      if (!is_comparison(n)) return;
      for (const auto& a : identifiers_in(n.children[0])) {
        for (const auto& b : identifiers_in(n.children[1])) graph_.add_comparison(a, b);
      }
    });
    control_.push_back(identifiers_in(cond));
  }

  void statement(const AstNode& s) {
    switch (s.kind) {
      case NodeKind::Compound:
        for (const auto& c : s.children) statement(c);
        return;
      case NodeKind::Decl: {
        for (const auto& c : s.children) data_edges(c);
        if (s.decl.has_init) {
          for (const auto& src : value_sources(s.children.back())) {
            graph_.add_edge(src, s.text, EdgeLabel::Assignment);
          }
          governed_write(s.text);
        }
        return;
      }
      case NodeKind::For: {
        std::size_t i = 0;
        for (; i < s.for_parts.init; ++i) statement(s.children[i]);
        if (s.for_parts.cond) {
          condition(s.children[i++]);
        } else {
          control_.emplace_back();
        }
        for (std::size_t k = 0; k < s.for_parts.next; ++k) expression_statement(s.children[i++]);
        statement(s.children.back());
        control_.pop_back();
        return;
      }
      case NodeKind::While:
        condition(s.children[0]);
        statement(s.children[1]);
        control_.pop_back();
        return;
      case NodeKind::If:
        condition(s.children[0]);
        for (std::size_t k = 1; k < s.children.size(); ++k) statement(s.children[k]);
        control_.pop_back();
        return;
      case NodeKind::Return:
        for (const auto& c : s.children) data_edges(c);
        return;
      default:
        expression_statement(s);
        return;
    }
  }

  const AstTree& ast_;
  DependencyGraph graph_;
  std::vector<std::vector<std::string>> control_;
};

}  // namespace

DependencyGraph build_dependency_graph(const AstTree& ast) { return GraphBuilder(ast).run(); }

bool RelatedVariableSet::contains(const std::string& name) const {
  return std::find(variables.begin(), variables.end(), name) != variables.end();
}

RelatedVariableSet taint_pointer(const DependencyGraph& graph, const PointerDecl& pointer) {
  if (pointer.declared_in != graph.function_name || !graph.has_node(pointer.name)) {
    throw PointerNotInFunction("pointer '" + pointer.name + "' is not declared in " +
                               graph.function_name);
  }
  const std::size_t target = graph.index_of(pointer.name);
  std::vector<bool> seen(graph.nodes().size(), false);
  seen[target] = true;
  std::vector<std::size_t> work{target};
  // Bottom-up: everything whose value reaches the pointer. Top-down reach is
  // only admitted for names that flow back into the pointer, which this
  // closure already contains; names that are merely assigned from the pointer
  // (c = p[j]) cannot affect it.
  while (!work.empty()) {
    const std::size_t x = work.back();
    work.pop_back();
    for (const auto& e : graph.in_edges(x)) {
      if (seen[e.from]) continue;
      if (e.label == EdgeLabel::CallArgument) continue;  // calls are opaque
      seen[e.from] = true;
      if (!graph.pointer_names().count(graph.nodes()[e.from])) work.push_back(e.from);
    }
  }

  RelatedVariableSet out;
  out.pointer = pointer;
  std::set<std::string> index_vars;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i] || i == target) continue;
    const auto& name = graph.nodes()[i];
    out.variables.push_back(name);
    if (graph.has_edge(name, pointer.name, EdgeLabel::ArrayIndex)) index_vars.insert(name);
  }
  for (const auto& name : out.variables) {
    VariableRole role = VariableRole::BaseOffset;
    if (index_vars.count(name)) {
      role = VariableRole::Index;
    } else {
      for (const auto& idx : index_vars) {
        if (graph.comparisons().count({name, idx})) {
          role = VariableRole::Bound;
          break;
        }
      }
    }
    out.roles[name] = role;
  }
  return out;
}

}  // namespace clone_lattice
