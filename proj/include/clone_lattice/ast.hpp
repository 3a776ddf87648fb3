#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace clone_lattice {

/// Syntax node vocabulary. The order is significant: it fixes the dimension
/// order of feature vectors, and the first nine kinds line up with the
/// classic DECKARD-style example vectors.
enum class NodeKind : std::uint8_t {
  ID,
  Constant,
  ArrayRef,
  Assignment,
  StructRef,
  BinaryOp,
  UnaryOp,
  Compound,
  For,
  While,
  If,
  Call,
  Return,
  Decl,
  Deref,
  FunctionDef,
  Param,
};

inline constexpr std::size_t kNodeKindCount = 17;

std::string_view node_kind_name(NodeKind kind);

struct SourceSpan {
  std::string file;
  int line_start = 1;
  int line_end = 1;
  int col_start = 1;
  int col_end = 1;

  bool contains(const SourceSpan& other) const;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Declarator information carried by Decl and Param nodes.
struct DeclInfo {
  std::string base_type;  // "int", "char", "struct foo", "lextree_t", ...
  int pointer_depth = 0;
  int array_rank = 0;
  bool has_init = false;

  bool is_pointer_like() const { return pointer_depth > 0 || array_rank > 0; }
  friend bool operator==(const DeclInfo&, const DeclInfo&) = default;
};

/// Child layout of a For node: the first `init` children are init
/// expressions, then `cond` (0 or 1) condition, then `next` step expressions,
/// then the body.
struct ForParts {
  std::uint8_t init = 0;
  std::uint8_t cond = 0;
  std::uint8_t next = 0;
  friend bool operator==(const ForParts&, const ForParts&) = default;
};

/// Node of a function's syntax tree.
///
/// `text` holds the lexeme for leaves, the operator for BinaryOp / UnaryOp /
/// Assignment ("=", "+=", "++", "p++", ...), the member name and access
/// operator for StructRef ("->" or "."), the callee for Call and the
/// declared name for Decl / Param / FunctionDef.
///
/// StructRef children are [base, ID(member)]. Decl children are the array
/// extents followed by the initializer (if `decl.has_init`). If children are
/// [cond, then, else?]. While children are [cond, body].
struct AstNode {
  NodeKind kind = NodeKind::Compound;
  std::string text;
  std::vector<AstNode> children;
  SourceSpan span;
  std::uint32_t id = 0;  // pre-order index, unique within one tree
  DeclInfo decl;
  ForParts for_parts;

  bool is_leaf() const { return kind == NodeKind::ID || kind == NodeKind::Constant; }
  std::size_t size() const;  // number of nodes in this subtree
};

struct AstTree {
  std::string function_name;
  AstNode root;
  std::size_t token_count = 0;

  const AstNode& body() const;
};

/// Assigns pre-order ids starting at zero.
void renumber(AstNode& root);

void visit_preorder(const AstNode& node, const std::function<void(const AstNode&)>& fn);
void visit_postorder(const AstNode& node, const std::function<void(const AstNode&)>& fn);

/// Kinds in post-order. This sequence is what similarity and feedback compare.
std::vector<NodeKind> postorder_kinds(const AstNode& node);

/// True for nodes that occupy a statement position inside a Compound or a
/// control construct body.
bool is_statement_kind(NodeKind kind);
bool is_control_kind(NodeKind kind);

/// For a control node, the indices of its header children (condition, init,
/// step) as opposed to its bodies.
std::vector<std::size_t> header_child_indices(const AstNode& node);
std::vector<std::size_t> body_child_indices(const AstNode& node);

/// Renders the tree back to C-subset source. The output reparses to an
/// isomorphic tree.
std::string pretty_print(const AstNode& node, int indent = 0);

/// Renders an expression on a single line.
std::string expression_text(const AstNode& expr);

/// Structural equality on kinds and child layout only (ignores text, spans).
bool same_shape(const AstNode& a, const AstNode& b);

}  // namespace clone_lattice
