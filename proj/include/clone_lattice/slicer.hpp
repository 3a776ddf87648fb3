#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "clone_lattice/ast.hpp"
#include "clone_lattice/dependency.hpp"
#include "clone_lattice/pointers.hpp"

namespace clone_lattice {

/// Statement node ids (AstNode::id) of one function tree.
using StatementSet = std::set<std::uint32_t>;

struct SlicedStatement {
  std::uint32_t node_id = 0;  // id in the original function tree
  NodeKind kind = NodeKind::Compound;
  SourceSpan span;
  std::string text;  // statement text, or the header for control constructs
};

/// The pointer-isolated version of one function.
struct PointerSlice {
  PointerDecl pointer;
  RelatedVariableSet related;
  std::vector<SlicedStatement> statements;  // original source order
  std::string origin;                       // function name
  AstTree slice_tree;

  /// "file:function:pointer"
  std::string id() const;
};

/// Statements that write or declare the pointer or a related variable (as an
/// assignment target, ++/--, or a `&x` call argument), plus statements that
/// dereference the pointer. Loop and branch nodes are included when their
/// header qualifies.
StatementSet backward_slice(const AstTree& ast, const RelatedVariableSet& related);

/// Adds every loop/branch node enclosing a kept statement, transitively.
StatementSet control_closure(const AstTree& ast, const StatementSet& kept);

/// Builds the slice. The slice tree is a FunctionDef carrying the parameters
/// that are the pointer or related, wrapping the kept statements in their
/// original nesting and order. Throws EmptySlice when no kept statement
/// dereferences the pointer.
PointerSlice isolate(const AstTree& ast, const PointerDecl& pointer, const RelatedVariableSet& related);

/// Convenience: graph, pointer list, tainting and isolation for every pointer
/// of the function. Pointers without a slice are skipped.
std::vector<PointerSlice> isolate_all(const AstTree& ast);

/// Slice as annotated source lines ("  12 | for (...)").
std::string render_slice(const PointerSlice& slice);

/// Number of lexical tokens in the body of a (slice) tree.
std::size_t body_token_count(const AstTree& tree);

}  // namespace clone_lattice
