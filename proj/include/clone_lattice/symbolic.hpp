#pragma once

#include <cstddef>

#include "clone_lattice/constraints.hpp"
#include "clone_lattice/slicer.hpp"

namespace clone_lattice {

struct SymbolicOptions {
  int unroll_bound = 2;
  std::size_t max_paths = 64;
};

/// Bounded symbolic execution of a slice. Related variables start as symbols
/// of their own name; everything else is unknown, and conditions over unknown
/// values add no atoms. Each access p[e] (or *(p+e), *p, p->f) of the target
/// pointer adds 0 <= e and e < length(p); a second subscript level uses
/// length(*p).
///
/// A for loop whose step moves a related variable by a constant is summarised
/// by a path that skips it and one symbolic iteration where the variable is
/// at least its initial value and the guard holds. Other loops are unrolled
/// up to `unroll_bound` times.
///
/// Throws UnsupportedConstruct for non-linear index arithmetic, deeper
/// subscripts, or more than `max_paths` live paths.
ConstraintSet symbolic_execute(const PointerSlice& slice, const SymbolicOptions& opts = {});

}  // namespace clone_lattice
