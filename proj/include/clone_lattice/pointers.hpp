#pragma once

#include <string>
#include <vector>

#include "clone_lattice/ast.hpp"

namespace clone_lattice {

struct PointerDecl {
  std::string name;         // identifier or member chain ("mdef->sseq")
  std::string declared_in;  // function name
  std::string base_type;    // empty for member chains
  bool is_parameter = false;
  bool is_member_chain = false;
  int depth = 1;  // pointer levels plus array ranks
  SourceSpan span;

  friend bool operator==(const PointerDecl&, const PointerDecl&) = default;
};

/// Pointer list of one function: pointer/array parameters, then pointer/array
/// locals in declaration order, then struct-member chains that are
/// subscripted, dereferenced or accessed with `->`.
std::vector<PointerDecl> enumerate_pointers(const AstTree& ast);

}  // namespace clone_lattice
