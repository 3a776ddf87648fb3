#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "clone_lattice/ast.hpp"

namespace clone_lattice {

/// Parses one pre-expanded C-subset translation unit and returns one tree per
/// function definition, in source order. Top-level prototypes, typedefs,
/// struct definitions and global variables are accepted and skipped.
///
/// Compound assignments are desugared: `x += e` becomes
/// Assignment(x, BinaryOp(+, x, e)). Casts are dropped. `sizeof` is a Call.
///
/// Throws SyntaxError on anything outside the subset.
std::vector<AstTree> parse_translation_unit(std::string_view source_text, const std::string& file);

}  // namespace clone_lattice
