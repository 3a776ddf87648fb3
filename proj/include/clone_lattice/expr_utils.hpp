#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clone_lattice/ast.hpp"

namespace clone_lattice {

/// Name of an identifier or a struct-member chain rooted at an identifier
/// ("mdef->n_sseq", "a.b->c"). Chains through subscripts or calls have no
/// name.
std::optional<std::string> chain_name(const AstNode& expr);

/// One memory access through a pointer: `p[i][j]`, `*p`, `*(p + e)`,
/// `p->f`. A null index stands for an implicit zero offset.
struct Access {
  std::string base;
  std::vector<const AstNode*> indices;
  const AstNode* node = nullptr;
};

/// All accesses inside `expr`, outermost first. Nested subscripts on the
/// same base form a single access with several indices.
std::vector<Access> collect_accesses(const AstNode& expr);

bool dereferences(const AstNode& expr, const std::string& pointer);

/// Identifiers and maximal member chains read by `expr`, in first-occurrence
/// order. Calls contribute a single opaque slot named by the call text; their
/// arguments are not descended into.
std::vector<std::string> identifiers_in(const AstNode& expr);

/// Names whose current value flows into the value of `expr` (not counting
/// subscripts, which only select an element).
std::vector<std::string> value_sources(const AstNode& expr);

/// Name written by an assignment target or ++/-- operand. For stores through
/// a pointer (`p[i] = x`, `*p = x`, `p->f = x`) this is the pointer and
/// `through_pointer` is set.
struct WriteTarget {
  std::string name;
  bool through_pointer = false;
};
std::optional<WriteTarget> write_target(const AstNode& lvalue);

/// Every (node, write target) pair inside a statement-level expression:
/// assignments, ++/--, and `&x` arguments passed to calls.
std::vector<WriteTarget> writes_in(const AstNode& expr);

bool is_comparison(const AstNode& expr);

}  // namespace clone_lattice
