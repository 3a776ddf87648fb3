#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "clone_lattice/ast.hpp"
#include "clone_lattice/pointers.hpp"

namespace clone_lattice {

enum class EdgeLabel : std::uint8_t { Assignment, ArrayIndex, CallArgument, Control };

std::string_view edge_label_name(EdgeLabel label);

struct DependencyEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  EdgeLabel label = EdgeLabel::Assignment;

  friend auto operator<=>(const DependencyEdge&, const DependencyEdge&) = default;
};

/// Directed dependency graph over the identifiers of one function. Nodes are
/// variables, member chains and opaque call slots, in first-occurrence order.
/// An edge u -> v means the value of u can influence v.
class DependencyGraph {
 public:
  std::string function_name;

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<DependencyEdge>& edges() const { return edges_; }
  const std::set<std::string>& pointer_names() const { return pointers_; }

  bool has_node(const std::string& name) const { return index_.count(name) > 0; }
  std::size_t index_of(const std::string& name) const { return index_.at(name); }
  bool has_edge(const std::string& from, const std::string& to, EdgeLabel label) const;

  std::vector<DependencyEdge> in_edges(std::size_t node) const;
  std::vector<DependencyEdge> out_edges(std::size_t node) const;

  /// Pairs of names compared against each other in loop and branch conditions.
  const std::set<std::pair<std::string, std::string>>& comparisons() const { return comparisons_; }

  /// Graphviz rendering for debugging.
  std::string to_dot() const;

  // Construction interface used by build_dependency_graph.
  std::size_t add_node(const std::string& name);
  void add_edge(const std::string& from, const std::string& to, EdgeLabel label);
  void add_pointer(const std::string& name) { pointers_.insert(name); }
  void add_comparison(const std::string& a, const std::string& b);

 private:
  std::vector<std::string> nodes_;
  std::map<std::string, std::size_t> index_;
  std::vector<DependencyEdge> edges_;
  std::set<DependencyEdge> edge_set_;
  std::set<std::string> pointers_;
  std::set<std::pair<std::string, std::string>> comparisons_;
};

/// Edges:
///  - assignment: value sources of the right-hand side -> assigned name.
///    Stores through a pointer and call results create no assignment edge.
///  - array-index: every identifier inside a subscript -> the subscripted
///    pointer.
///  - call-argument: value sources of each argument -> the call slot.
///  - control: identifiers of an enclosing loop/branch condition -> every
///    name written under it (for-loop steps included, for-loop inits not).
DependencyGraph build_dependency_graph(const AstTree& ast);

enum class VariableRole : std::uint8_t { Index, Bound, BaseOffset };

std::string_view role_name(VariableRole role);

struct RelatedVariableSet {
  PointerDecl pointer;
  std::vector<std::string> variables;  // first-occurrence order, pointer excluded
  std::map<std::string, VariableRole> roles;

  bool contains(const std::string& name) const;
};

/// Variables that can affect the pointer's base, offset or bound: everything
/// that reaches the pointer through the graph. Other pointers reached this way
/// are reported but not expanded further; call slots are not expanded into
/// their arguments. Throws PointerNotInFunction.
RelatedVariableSet taint_pointer(const DependencyGraph& graph, const PointerDecl& pointer);

}  // namespace clone_lattice
