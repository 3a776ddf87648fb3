#include "doctest.h"

#include "clone_lattice/errors.hpp"
#include "random_constraints.hpp"

using namespace clone_lattice;

namespace {

Atom atom_of(const LinearExpr& l, CmpOp op, const LinearExpr& r) { return std::get<Atom>(make_atom(l, op, r)); }

ConstraintSet one_path(std::vector<Atom> atoms, const std::string& ptr = "p") {
  ConstraintSet cs;
  cs.pointer = ptr;
  PathCondition pc;
  for (auto& a : atoms) pc.atoms.insert(a);
  cs.paths.insert(pc);
  return cs;
}

const auto X = LinearExpr::var("x");
const auto N = [](std::int64_t k) { return LinearExpr::num(k); };

}  // namespace

TEST_CASE("atoms are canonical") {
  CHECK(atom_of(X, CmpOp::Lt, N(3)).to_string() == "(<= (+ x -2) 0)");
  CHECK(atom_of(X * 2, CmpOp::Le, N(4)) == atom_of(X, CmpOp::Le, N(2)));
  CHECK(atom_of(X, CmpOp::Ge, N(1)) == atom_of(N(1), CmpOp::Le, X));
  CHECK(std::get<bool>(make_atom(N(1), CmpOp::Lt, N(2))));
  CHECK(!std::get<bool>(make_atom(N(3), CmpOp::Eq, N(2))));
  CHECK(negated_atoms(X, CmpOp::Eq, N(0)).size() == 2);
}

TEST_CASE("simplify") {
  SUBCASE("parallel atoms keep the stronger") {
    auto cs = simplify(one_path({atom_of(X, CmpOp::Lt, N(3)), atom_of(X, CmpOp::Lt, N(5))}));
    REQUIRE(cs.paths.size() == 1);
    CHECK(cs.paths.begin()->atoms == std::set<Atom>{atom_of(X, CmpOp::Lt, N(3))});
  }
  SUBCASE("contradiction drops the path") {
    auto cs = simplify(one_path({atom_of(X, CmpOp::Ge, N(1)), atom_of(X, CmpOp::Lt, N(1))}));
    CHECK(cs.paths.empty());
  }
  SUBCASE("minimal input is unchanged") {
    auto in = one_path({atom_of(X, CmpOp::Lt, N(3)), atom_of(LinearExpr::var("y"), CmpOp::Ge, N(0))});
    auto once = simplify(in);
    CHECK(once.paths == in.paths);
    CHECK(simplify(once).paths == once.paths);
  }
}

TEST_CASE("simplify preserves every assignment") {
  randcs::Generator gen(11);
  for (int i = 0; i < 300; ++i) {
    auto f = gen.formula();
    auto cs = randcs::build(f);
    auto s = simplify(cs);
    std::map<std::string, std::int64_t> env;
    for (std::int64_t x = -6; x <= 6; ++x)
      for (std::int64_t y = -6; y <= 6; ++y)
        for (std::int64_t l = 0; l <= 6; ++l) {
          env = {{"x", x}, {"y", y}, {"length(p)", l}};
          REQUIRE(evaluate(cs, env) == randcs::holds(f, env));
          REQUIRE(evaluate(s, env) == evaluate(cs, env));
        }
  }
}

TEST_CASE("variable matching") {
  ConstraintSet a, b;
  a.pointer = "a";
  b.pointer = "b";
  a.symbolic_vars = {{"i", VariableRole::Index}};
  b.symbolic_vars = {{"j", VariableRole::Index}};
  auto m = match_variables(a, b);
  CHECK(m.pairs.front() == std::pair<std::string, std::string>{"i", "j"});

  a.symbolic_vars = {{"i", VariableRole::Index}, {"j", VariableRole::Index}};
  b.symbolic_vars = {{"codeid", VariableRole::Index}, {"cid", VariableRole::Index}};
  m = match_variables(a, b);
  CHECK(m.b_to_a().at("codeid") == "i");
  CHECK(m.b_to_a().at("cid") == "j");
  CHECK(m.b_to_a().at("length(b)") == "length(a)");

  a.symbolic_vars = {{"j", VariableRole::Index}};
  b.symbolic_vars = {{"i", VariableRole::Index}, {"n", VariableRole::Bound}};
  CHECK_THROWS_AS(match_variables(a, b), NoMatching);
}

TEST_CASE("equivalence examples") {
  SUBCASE("renamed lower bounds") {
    auto y1 = LinearExpr::var("y1"), x1 = LinearExpr::var("x1");
    auto y2 = LinearExpr::var("y2"), x2 = LinearExpr::var("x2");
    auto s1 = one_path({atom_of(y1, CmpOp::Ge, N(10)), atom_of(x1, CmpOp::Ge, N(20))});
    auto s2 = one_path({atom_of(y2, CmpOp::Ge, N(10)), atom_of(x2, CmpOp::Ge, N(20))});
    VariableMatching m{{{"y1", "y2"}, {"x1", "x2"}}};
    CHECK(check_equivalence(s1, s2, m) == Verdict::Equivalent);
  }
  SUBCASE("an extra bound differs") {
    auto j = LinearExpr::var("j"), i = LinearExpr::var("i"), n = LinearExpr::var("n");
    auto la = LinearExpr::var("length(a)"), lb = LinearExpr::var("length(b)");
    auto s1 = one_path({atom_of(j, CmpOp::Lt, la)}, "a");
    auto s2 = one_path({atom_of(i, CmpOp::Lt, n), atom_of(i, CmpOp::Lt, lb)}, "b");
    VariableMatching m{{{"j", "i"}, {"length(a)", "length(b)"}}};
    EquivalenceOptions opts;
    opts.domain_radius = 16;
    CHECK(check_equivalence(s1, s2, m, opts) == Verdict::NotEquivalent);
  }
}

TEST_CASE("domain budget") {
  ConstraintSet a;
  PathCondition pc;
  for (auto v : {"a", "b", "c", "d"}) pc.atoms.insert(atom_of(LinearExpr::var(v), CmpOp::Le, N(0)));
  a.paths.insert(pc);
  ConstraintSet b = a;
  b.paths.clear();
  CHECK_THROWS_AS(enumerate_equivalence(a, b), DomainTooLarge);
}

TEST_CASE("fast path never contradicts enumeration") {
  randcs::Generator gen(2024);
  EquivalenceOptions opts;
  opts.domain_radius = 8;
  const auto m = randcs::identity_matching();
  for (int i = 0; i < 400; ++i) {
    auto f = gen.formula();
    auto g = gen.pick(0, 1) ? gen.equivalent_variant(f) : gen.mutated(f);
    auto a = randcs::build(f), b = randcs::build(g);
    const bool truth = randcs::equivalent(f, g, opts.domain_radius);
    if (canonically_equal(a, b, m)) CHECK(truth);
    CHECK((check_equivalence(a, b, m, opts) == Verdict::Equivalent) == truth);
  }
}

TEST_CASE("renaming invariance") {
  randcs::Generator gen(77);
  for (int i = 0; i < 100; ++i) {
    auto a = randcs::build(gen.formula());
    std::map<std::string, std::string> names{{"x", "u" + std::to_string(i)},
                                             {"y", "w" + std::to_string(i)},
                                             {"length(p)", "length(q)"},
                                             {"length(*p)", "length(*q)"}};
    auto b = rename(a, names, "q");
    auto m = match_variables(a, b);
    CHECK(check_equivalence(a, b, m) == Verdict::Equivalent);
  }
}

TEST_CASE("empty path set evaluates false") {
  ConstraintSet cs;
  CHECK(!evaluate(cs, {}));
}

TEST_CASE("canonical text") {
  auto cs = one_path({atom_of(X, CmpOp::Ge, N(0))});
  cs.symbolic_vars = {{"x", VariableRole::Index}};
  CHECK(cs.to_text() == "(constraints p\n  (vars (x index))\n  (and (<= (* -1 x) 0))\n)\n");
}
