#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "clone_lattice/dependency.hpp"

namespace clone_lattice {

/// sum(coeff * var) + constant over integers.
struct LinearExpr {
  std::map<std::string, std::int64_t> coeffs;  // no zero entries
  std::int64_t constant = 0;

  static LinearExpr var(const std::string& name, std::int64_t coeff = 1);
  static LinearExpr num(std::int64_t value);

  bool is_constant() const { return coeffs.empty(); }
  LinearExpr operator+(const LinearExpr& o) const;
  LinearExpr operator-(const LinearExpr& o) const;
  LinearExpr operator*(std::int64_t k) const;
  LinearExpr renamed(const std::map<std::string, std::string>& names) const;
  std::string to_string() const;

  friend bool operator==(const LinearExpr&, const LinearExpr&) = default;
  friend auto operator<=>(const LinearExpr&, const LinearExpr&) = default;
};

enum class CmpOp : std::uint8_t { Lt, Le, Gt, Ge, Eq };

/// Canonical atom: `expr <= 0` or `expr == 0`, coefficients divided by their
/// gcd, sorted by variable name, and for equalities the first coefficient
/// positive.
struct Atom {
  enum class Rel : std::uint8_t { Le, Eq };
  LinearExpr expr;
  Rel rel = Rel::Le;

  std::string to_string() const;
  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// `lhs op rhs` in canonical form; a bool when the atom folds to a constant.
std::variant<bool, Atom> make_atom(const LinearExpr& lhs, CmpOp op, const LinearExpr& rhs);

/// The atoms equivalent to NOT(lhs op rhs); `!=` yields two alternatives.
std::vector<std::variant<bool, Atom>> negated_atoms(const LinearExpr& lhs, CmpOp op, const LinearExpr& rhs);

struct PathCondition {
  std::set<Atom> atoms;  // conjunction

  std::string to_string() const;
  friend bool operator==(const PathCondition&, const PathCondition&) = default;
  friend auto operator<=>(const PathCondition&, const PathCondition&) = default;
};

/// Symbolic length of the target pointer (level 0) or of its elements (1).
std::string length_term(const std::string& pointer, int level);
bool is_length_term(const std::string& name);

/// Disjunction of path conditions. An empty path set means the slice produced
/// no bound constraints.
struct ConstraintSet {
  std::string pointer;
  std::vector<std::pair<std::string, VariableRole>> symbolic_vars;  // first-use order
  std::set<PathCondition> paths;

  std::set<std::string> variables() const;  // every name occurring in an atom
  std::string to_text() const;
};

/// Drops atoms implied by a parallel atom, drops contradictory paths, merges
/// equal paths and drops paths subsumed by a weaker path. Logically exact.
ConstraintSet simplify(const ConstraintSet& cs);

struct VariableMatching {
  std::vector<std::pair<std::string, std::string>> pairs;  // (a name, b name)
  std::map<std::string, std::string> b_to_a() const;
};

/// Pairs variables role by role in first-use order; the two pointers' length
/// terms are paired with each other. Throws NoMatching when a role has a
/// different number of variables on the two sides.
VariableMatching match_variables(const ConstraintSet& a, const ConstraintSet& b);

/// b's constraints with names mapped through `names` (unmapped names kept).
ConstraintSet rename(const ConstraintSet& cs, const std::map<std::string, std::string>& names,
                     const std::string& new_pointer);

enum class Verdict : std::uint8_t { Equivalent, NotEquivalent };

struct EquivalenceOptions {
  std::int64_t domain_radius = 64;
  std::uint64_t budget = 129ull * 129ull * 129ull;
};

/// Equivalent when the simplified canonical forms agree after renaming, or
/// when both formulas agree on every assignment of the bounded domain
/// (length terms range over [0, r], other variables over [-r, r]). Throws
/// DomainTooLarge when the enumeration would exceed the budget.
Verdict check_equivalence(const ConstraintSet& a, const ConstraintSet& b, const VariableMatching& m,
                          const EquivalenceOptions& opts = {});

/// Fast path only: canonical equality after renaming and simplification.
bool canonically_equal(const ConstraintSet& a, const ConstraintSet& b, const VariableMatching& m);

/// Exhaustive check only, over the listed variables.
Verdict enumerate_equivalence(const ConstraintSet& a, const ConstraintSet& b, const EquivalenceOptions& opts = {});

bool evaluate(const ConstraintSet& cs, const std::map<std::string, std::int64_t>& assignment);
bool evaluate(const Atom& atom, const std::map<std::string, std::int64_t>& assignment);

}  // namespace clone_lattice
