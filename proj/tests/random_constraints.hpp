#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "clone_lattice/constraints.hpp"

// Random disjunctions of linear comparisons kept in a raw form that the test
// evaluates on its own, next to the library's canonical ConstraintSet.
namespace randcs {

struct RawAtom {
  std::map<std::string, std::int64_t> lhs;  // sum c*v
  clone_lattice::CmpOp op = clone_lattice::CmpOp::Le;
  std::int64_t rhs = 0;  // lhs op rhs
};

using RawPath = std::vector<RawAtom>;
using RawFormula = std::vector<RawPath>;

inline const std::vector<std::string>& var_pool() {
  static const std::vector<std::string> v{"x", "y", "length(p)"};
  return v;
}

inline bool holds(const RawAtom& a, const std::map<std::string, std::int64_t>& env) {
  std::int64_t s = 0;
  for (const auto& [v, c] : a.lhs) s += c * env.at(v);
  switch (a.op) {
    case clone_lattice::CmpOp::Lt: return s < a.rhs;
    case clone_lattice::CmpOp::Le: return s <= a.rhs;
    case clone_lattice::CmpOp::Gt: return s > a.rhs;
    case clone_lattice::CmpOp::Ge: return s >= a.rhs;
    case clone_lattice::CmpOp::Eq: return s == a.rhs;
  }
  return false;
}

inline bool holds(const RawFormula& f, const std::map<std::string, std::int64_t>& env) {
  for (const auto& p : f) {
    bool all = true;
    for (const auto& a : p) all = all && holds(a, env);
    if (all) return true;
  }
  return false;
}

// brute force over [-r, r] (length terms over [0, r])
inline bool equivalent(const RawFormula& a, const RawFormula& b, std::int64_t r) {
  const auto& vars = var_pool();
  std::map<std::string, std::int64_t> env;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y)
      for (std::int64_t l = 0; l <= r; ++l) {
        env[vars[0]] = x;
        env[vars[1]] = y;
        env[vars[2]] = l;
        if (holds(a, env) != holds(b, env)) return false;
      }
  return true;
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  RawAtom atom() {
    RawAtom a;
    const int nv = pick(1, 2);
    for (int i = 0; i < nv; ++i) {
      const auto& v = var_pool()[static_cast<std::size_t>(pick(0, 2))];
      int c = pick(-4, 4);
      if (c == 0) c = 1;
      a.lhs[v] = c;
    }
    a.op = static_cast<clone_lattice::CmpOp>(pick(0, 4));
    a.rhs = pick(-16, 16);
    return a;
  }

  RawFormula formula() {
    RawFormula f(static_cast<std::size_t>(pick(1, 3)));
    for (auto& p : f) {
      p.resize(static_cast<std::size_t>(pick(1, 3)));
      for (auto& a : p) a = atom();
    }
    return f;
  }

  // same truth table by construction
  RawFormula equivalent_variant(const RawFormula& f) {
    RawFormula g = f;
    for (auto& p : g) {
      for (auto& a : p) {
        const int k = pick(1, 3);
        if (k > 1) {
          for (auto& [v, c] : a.lhs) c *= k;
          a.rhs *= k;
        }
        if (a.op == clone_lattice::CmpOp::Lt && pick(0, 1)) {
          a.op = clone_lattice::CmpOp::Le;
          a.rhs -= 1;
        }
      }
      if (!p.empty() && pick(0, 2) == 0) {
        RawAtom weaker = p.front();
        if (weaker.op == clone_lattice::CmpOp::Le || weaker.op == clone_lattice::CmpOp::Lt) {
          weaker.rhs += pick(1, 5);
          p.push_back(weaker);
        }
      }
      std::shuffle(p.begin(), p.end(), rng_);
    }
    if (pick(0, 3) == 0 && !g.empty()) g.push_back(g.front());
    std::shuffle(g.begin(), g.end(), rng_);
    return g;
  }

  RawFormula mutated(const RawFormula& f) {
    RawFormula g = f;
    auto& p = g[static_cast<std::size_t>(pick(0, static_cast<int>(g.size()) - 1))];
    auto& a = p[static_cast<std::size_t>(pick(0, static_cast<int>(p.size()) - 1))];
    switch (pick(0, 2)) {
      case 0: a.rhs += pick(0, 1) ? 1 : -1; break;
      case 1: a.op = static_cast<clone_lattice::CmpOp>(pick(0, 4)); break;
      default: p.push_back(atom()); break;
    }
    return g;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline clone_lattice::LinearExpr to_expr(const std::map<std::string, std::int64_t>& lhs) {
  clone_lattice::LinearExpr e;
  for (const auto& [v, c] : lhs) e = e + clone_lattice::LinearExpr::var(v, c);
  return e;
}

inline clone_lattice::ConstraintSet build(const RawFormula& f, const std::string& pointer = "p") {
  using namespace clone_lattice;
  ConstraintSet cs;
  cs.pointer = pointer;
  cs.symbolic_vars = {{"x", VariableRole::Index}, {"y", VariableRole::Bound}};
  for (const auto& raw : f) {
    PathCondition pc;
    bool dead = false;
    for (const auto& a : raw) {
      auto r = make_atom(to_expr(a.lhs), a.op, LinearExpr::num(a.rhs));
      if (auto* atom = std::get_if<Atom>(&r)) {
        pc.atoms.insert(*atom);
      } else if (!std::get<bool>(r)) {
        dead = true;
      }
    }
    if (!dead) cs.paths.insert(pc);
  }
  return cs;
}

inline clone_lattice::VariableMatching identity_matching() {
  clone_lattice::VariableMatching m;
  for (const auto& v : var_pool()) m.pairs.emplace_back(v, v);
  m.pairs.emplace_back("length(*p)", "length(*p)");
  return m;
}

}  // namespace randcs
