#include "clone_lattice/constraints.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "clone_lattice/errors.hpp"

namespace clone_lattice {

LinearExpr LinearExpr::var(const std::string& name, std::int64_t coeff) {
  LinearExpr e;
  if (coeff != 0) e.coeffs[name] = coeff;
  return e;
}

LinearExpr LinearExpr::num(std::int64_t value) {
  LinearExpr e;
  e.constant = value;
  return e;
}

LinearExpr LinearExpr::operator+(const LinearExpr& o) const {
  LinearExpr r = *this;
  r.constant += o.constant;
  for (const auto& [v, c] : o.coeffs) {
    if ((r.coeffs[v] += c) == 0) r.coeffs.erase(v);
  }
  return r;
}

LinearExpr LinearExpr::operator-(const LinearExpr& o) const { return *this + o * -1; }

LinearExpr LinearExpr::operator*(std::int64_t k) const {
  LinearExpr r;
  if (k == 0) return r;
  r.constant = constant * k;
  for (const auto& [v, c] : coeffs) r.coeffs[v] = c * k;
  return r;
}

LinearExpr LinearExpr::renamed(const std::map<std::string, std::string>& names) const {
  LinearExpr r;
  r.constant = constant;
  for (const auto& [v, c] : coeffs) {
    auto it = names.find(v);
    r = r + var(it == names.end() ? v : it->second, c);
  }
  return r;
}

std::string LinearExpr::to_string() const {
  std::vector<std::string> terms;
  for (const auto& [v, c] : coeffs) terms.push_back(c == 1 ? v : "(* " + std::to_string(c) + " " + v + ")");
  if (constant != 0 || terms.empty()) terms.push_back(std::to_string(constant));
  if (terms.size() == 1) return terms[0];
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

std::string Atom::to_string() const {
  return std::string(rel == Rel::Le ? "(<= " : "(= ") + expr.to_string() + " 0)";
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t coeff_gcd(const LinearExpr& e) {
  std::int64_t g = 0;
  for (const auto& [v, c] : e.coeffs) g = std::gcd(g, c < 0 ? -c : c);
  return g;
}

std::variant<bool, Atom> normalize(LinearExpr e, Atom::Rel rel) {
  if (e.is_constant()) return rel == Atom::Rel::Le ? e.constant <= 0 : e.constant == 0;
  const std::int64_t g = coeff_gcd(e);
  if (rel == Atom::Rel::Eq && e.constant % g != 0) return false;
  for (auto& [v, c] : e.coeffs) c /= g;
  e.constant = rel == Atom::Rel::Le ? ceil_div(e.constant, g) : e.constant / g;
  if (rel == Atom::Rel::Eq && e.coeffs.begin()->second < 0) e = e * -1;
  return Atom{std::move(e), rel};
}

}  // namespace

std::variant<bool, Atom> make_atom(const LinearExpr& lhs, CmpOp op, const LinearExpr& rhs) {
  const LinearExpr d = lhs - rhs;
  switch (op) {
    case CmpOp::Lt:
      return normalize(d + LinearExpr::num(1), Atom::Rel::Le);
    case CmpOp::Le:
      return normalize(d, Atom::Rel::Le);
    case CmpOp::Gt:
      return normalize(d * -1 + LinearExpr::num(1), Atom::Rel::Le);
    case CmpOp::Ge:
      return normalize(d * -1, Atom::Rel::Le);
    case CmpOp::Eq:
      return normalize(d, Atom::Rel::Eq);
  }
  return true;
}

std::vector<std::variant<bool, Atom>> negated_atoms(const LinearExpr& lhs, CmpOp op, const LinearExpr& rhs) {
  switch (op) {
    case CmpOp::Lt:
      return {make_atom(lhs, CmpOp::Ge, rhs)};
    case CmpOp::Le:
      return {make_atom(lhs, CmpOp::Gt, rhs)};
    case CmpOp::Gt:
      return {make_atom(lhs, CmpOp::Le, rhs)};
    case CmpOp::Ge:
      return {make_atom(lhs, CmpOp::Lt, rhs)};
    case CmpOp::Eq:
      return {make_atom(lhs, CmpOp::Lt, rhs), make_atom(lhs, CmpOp::Gt, rhs)};
  }
  return {};
}

std::string PathCondition::to_string() const {
  std::string out = "(and";
  for (const auto& a : atoms) out += " " + a.to_string();
  return out + ")";
}

std::string length_term(const std::string& pointer, int level) {
  return level == 0 ? "length(" + pointer + ")" : "length(*" + pointer + ")";
}

bool is_length_term(const std::string& name) { return name.rfind("length(", 0) == 0; }

std::set<std::string> ConstraintSet::variables() const {
  std::set<std::string> out;
  for (const auto& p : paths) {
    for (const auto& a : p.atoms) {
      for (const auto& [v, c] : a.expr.coeffs) out.insert(v);
    }
  }
  return out;
}

std::string ConstraintSet::to_text() const {
  std::ostringstream os;
  os << "(constraints " << pointer << "\n  (vars";
  for (const auto& [v, r] : symbolic_vars) os << " (" << v << " " << role_name(r) << ")";
  os << ")\n";
  for (const auto& p : paths) os << "  " << p.to_string() << "\n";
  os << ")\n";
  return os.str();
}

namespace {

// Simplified conjunction, or nullopt when contradictory.
std::optional<PathCondition> simplify_path(const PathCondition& p) {
  using Coeffs = std::map<std::string, std::int64_t>;
  std::map<Coeffs, std::int64_t> le;  // strongest constant per direction
  std::map<Coeffs, std::int64_t> eq;
  for (const auto& a : p.atoms) {
    if (a.rel == Atom::Rel::Le) {
      auto [it, fresh] = le.emplace(a.expr.coeffs, a.expr.constant);
      if (!fresh) it->second = std::max(it->second, a.expr.constant);
    } else {
      auto [it, fresh] = eq.emplace(a.expr.coeffs, a.expr.constant);
      if (!fresh && it->second != a.expr.constant) return std::nullopt;
    }
  }
  auto negate = [](const Coeffs& k) {
    Coeffs n;
    for (const auto& [v, c] : k) n[v] = -c;
    return n;
  };
  PathCondition out;
  for (const auto& [k, c] : eq) out.atoms.insert(Atom{LinearExpr{k, c}, Atom::Rel::Eq});
  for (const auto& [k, c] : le) {
    // k.x + c <= 0 against -k.x + c2 <= 0, i.e. k.x >= c2
    auto opp = le.find(negate(k));
    if (opp != le.end() && c + opp->second > 0) return std::nullopt;
    bool implied = false;
    if (auto e = eq.find(k); e != eq.end()) {
      // k.x = -ce
      if (c - e->second > 0) return std::nullopt;
      implied = true;
    } else if (auto e2 = eq.find(negate(k)); e2 != eq.end()) {
      // k.x = ce
      if (c + e2->second > 0) return std::nullopt;
      implied = true;
    }
    if (!implied) out.atoms.insert(Atom{LinearExpr{k, c}, Atom::Rel::Le});
  }
  return out;
}

}  // namespace

ConstraintSet simplify(const ConstraintSet& cs) {
  ConstraintSet out;
  out.pointer = cs.pointer;
  out.symbolic_vars = cs.symbolic_vars;
  std::vector<PathCondition> paths;
  for (const auto& p : cs.paths) {
    if (auto s = simplify_path(p)) paths.push_back(std::move(*s));
  }
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < paths.size() && !subsumed; ++j) {
      if (i == j || paths[j].atoms.size() >= paths[i].atoms.size()) continue;
      subsumed = std::includes(paths[i].atoms.begin(), paths[i].atoms.end(), paths[j].atoms.begin(),
                               paths[j].atoms.end());
    }
    if (!subsumed) out.paths.insert(paths[i]);
  }
  return out;
}

std::map<std::string, std::string> VariableMatching::b_to_a() const {
  std::map<std::string, std::string> out;
  for (const auto& [a, b] : pairs) out[b] = a;
  return out;
}

VariableMatching match_variables(const ConstraintSet& a, const ConstraintSet& b) {
  VariableMatching m;
  for (auto role : {VariableRole::Index, VariableRole::Bound, VariableRole::BaseOffset}) {
    std::vector<std::string> left, right;
    for (const auto& [v, r] : a.symbolic_vars) {
      if (r == role) left.push_back(v);
    }
    for (const auto& [v, r] : b.symbolic_vars) {
      if (r == role) right.push_back(v);
    }
    if (left.size() != right.size()) {
      throw NoMatching(std::string(role_name(role)) + " variables: " + std::to_string(left.size()) + " vs " +
                       std::to_string(right.size()));
    }
    for (std::size_t i = 0; i < left.size(); ++i) m.pairs.emplace_back(left[i], right[i]);
  }
  for (int level = 0; level < 2; ++level) m.pairs.emplace_back(length_term(a.pointer, level), length_term(b.pointer, level));
  return m;
}

ConstraintSet rename(const ConstraintSet& cs, const std::map<std::string, std::string>& names,
                     const std::string& new_pointer) {
  auto map_name = [&](const std::string& v) {
    auto it = names.find(v);
    return it == names.end() ? v : it->second;
  };
  ConstraintSet out;
  out.pointer = new_pointer;
  for (const auto& [v, r] : cs.symbolic_vars) out.symbolic_vars.emplace_back(map_name(v), r);
  for (const auto& p : cs.paths) {
    PathCondition q;
    bool dead = false;
    for (const auto& a : p.atoms) {
      auto n = normalize(a.expr.renamed(names), a.rel);
      if (auto* atom = std::get_if<Atom>(&n)) {
        q.atoms.insert(std::move(*atom));
      } else if (!std::get<bool>(n)) {
        dead = true;
      }
    }
    if (!dead) out.paths.insert(std::move(q));
  }
  return out;
}

bool evaluate(const Atom& atom, const std::map<std::string, std::int64_t>& assignment) {
  std::int64_t v = atom.expr.constant;
  for (const auto& [name, c] : atom.expr.coeffs) v += c * assignment.at(name);
  return atom.rel == Atom::Rel::Le ? v <= 0 : v == 0;
}

bool evaluate(const ConstraintSet& cs, const std::map<std::string, std::int64_t>& assignment) {
  for (const auto& p : cs.paths) {
    bool all = true;
    for (const auto& a : p.atoms) {
      if (!evaluate(a, assignment)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

namespace {

struct CompiledAtom {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  std::int64_t constant;
  bool eq;
};

using CompiledFormula = std::vector<std::vector<CompiledAtom>>;

CompiledFormula compile(const ConstraintSet& cs, const std::map<std::string, std::size_t>& index) {
  CompiledFormula f;
  for (const auto& p : cs.paths) {
    std::vector<CompiledAtom> conj;
    for (const auto& a : p.atoms) {
      CompiledAtom c{{}, a.expr.constant, a.rel == Atom::Rel::Eq};
      for (const auto& [v, k] : a.expr.coeffs) c.terms.emplace_back(index.at(v), k);
      conj.push_back(std::move(c));
    }
    f.push_back(std::move(conj));
  }
  return f;
}

bool eval_compiled(const CompiledFormula& f, const std::vector<std::int64_t>& x) {
  for (const auto& conj : f) {
    bool all = true;
    for (const auto& a : conj) {
      std::int64_t v = a.constant;
      for (const auto& [i, k] : a.terms) v += k * x[i];
      if (a.eq ? v != 0 : v > 0) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

Verdict enumerate_equivalence(const ConstraintSet& a, const ConstraintSet& b, const EquivalenceOptions& opts) {
  std::set<std::string> vars = a.variables();
  for (const auto& v : b.variables()) vars.insert(v);
  std::map<std::string, std::size_t> index;
  std::vector<std::int64_t> lo, hi;
  double total = 1.0;
  for (const auto& v : vars) {
    index[v] = lo.size();
    lo.push_back(is_length_term(v) ? 0 : -opts.domain_radius);
    hi.push_back(opts.domain_radius);
    total *= static_cast<double>(hi.back() - lo.back() + 1);
  }
  if (total > static_cast<double>(opts.budget)) {
    throw DomainTooLarge(std::to_string(vars.size()) + " variables exceed the enumeration budget");
  }
  const auto fa = compile(a, index);
  const auto fb = compile(b, index);
  std::vector<std::int64_t> x = lo;
  while (true) {
    if (eval_compiled(fa, x) != eval_compiled(fb, x)) return Verdict::NotEquivalent;
    std::size_t k = 0;
    while (k < x.size() && x[k] == hi[k]) {
      x[k] = lo[k];
      ++k;
    }
    if (k == x.size()) break;
    ++x[k];
  }
  return Verdict::Equivalent;
}

bool canonically_equal(const ConstraintSet& a, const ConstraintSet& b, const VariableMatching& m) {
  return simplify(a).paths == simplify(rename(b, m.b_to_a(), a.pointer)).paths;
}

Verdict check_equivalence(const ConstraintSet& a, const ConstraintSet& b, const VariableMatching& m,
                          const EquivalenceOptions& opts) {
  const ConstraintSet sa = simplify(a);
  const ConstraintSet sb = simplify(rename(b, m.b_to_a(), a.pointer));
  if (sa.paths == sb.paths) return Verdict::Equivalent;
  return enumerate_equivalence(sa, sb, opts);
}

}  // namespace clone_lattice
