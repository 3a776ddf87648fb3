#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clone_lattice/dependency.hpp"
#include "clone_lattice/parser.hpp"
#include "clone_lattice/pointers.hpp"
#include "clone_lattice/slicer.hpp"

#ifndef CLONE_LATTICE_SOURCE_DIR
#define CLONE_LATTICE_SOURCE_DIR "."
#endif

namespace testsupport {

inline std::string source_path(const std::string& rel) { return std::string(CLONE_LATTICE_SOURCE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<clone_lattice::AstTree> parse_source(const std::string& code, const std::string& file = "t.c") {
  return clone_lattice::parse_translation_unit(code, file);
}

inline const std::vector<clone_lattice::AstTree>& fixtures() {
  static const auto trees = clone_lattice::parse_translation_unit(
      read_file(source_path("corpus/micro/sphinx_fixtures.c")), "sphinx_fixtures.c");
  return trees;
}

inline const clone_lattice::AstTree& function_named(const std::vector<clone_lattice::AstTree>& trees,
                                                    const std::string& name) {
  for (const auto& t : trees)
    if (t.function_name == name) return t;
  throw std::runtime_error("no function " + name);
}

inline clone_lattice::PointerDecl pointer_named(const clone_lattice::AstTree& fn, const std::string& name) {
  for (const auto& p : clone_lattice::enumerate_pointers(fn))
    if (p.name == name) return p;
  throw std::runtime_error("no pointer " + name + " in " + fn.function_name);
}

inline clone_lattice::RelatedVariableSet taint_of(const clone_lattice::AstTree& fn, const std::string& pointer) {
  const auto g = clone_lattice::build_dependency_graph(fn);
  return clone_lattice::taint_pointer(g, pointer_named(fn, pointer));
}

inline clone_lattice::PointerSlice slice_of(const clone_lattice::AstTree& fn, const std::string& pointer) {
  return clone_lattice::isolate(fn, pointer_named(fn, pointer), taint_of(fn, pointer));
}

inline std::vector<std::string> sorted_vars(const clone_lattice::RelatedVariableSet& r) {
  std::vector<std::string> v = r.variables;
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace testsupport
