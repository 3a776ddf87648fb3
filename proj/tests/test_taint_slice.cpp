#include "doctest.h"

#include <set>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/expr_utils.hpp"
#include "clone_lattice/features.hpp"
#include "support.hpp"

using namespace clone_lattice;
using testsupport::fixtures;
using testsupport::function_named;
using testsupport::parse_source;
using testsupport::sorted_vars;
using testsupport::taint_of;

using Names = std::vector<std::string>;

TEST_CASE("dependency edges of the active loop") {
  auto t = parse_source("void f(int *active) { int j, c; for (j = 0; active[j] >= 0; j++) c = active[j]; }");
  auto g = build_dependency_graph(t[0]);
  CHECK(g.has_edge("j", "active", EdgeLabel::ArrayIndex));
  CHECK(g.has_edge("active", "c", EdgeLabel::Assignment));
  CHECK(g.has_edge("j", "c", EdgeLabel::Control));
}

TEST_CASE("single assignment gives one node and no edges") {
  auto t = parse_source("void f(void) { int x; x = 1; }");
  auto g = build_dependency_graph(t[0]);
  CHECK(g.nodes() == Names{"x"});
  CHECK(g.edges().empty());
}

TEST_CASE("pointer copy edge") {
  auto t = parse_source("void f(int *p, int *q) { p = q; }");
  auto g = build_dependency_graph(t[0]);
  CHECK(g.has_edge("q", "p", EdgeLabel::Assignment));
}

TEST_CASE("fixture taint sets") {
  CHECK(sorted_vars(taint_of(function_named(fixtures(), "mgau_eval"), "active")) == Names{"j"});
  CHECK(sorted_vars(taint_of(function_named(fixtures(), "lextree_hmm_histbin"), "list")) ==
        Names{"i", "lextree->n_active"});
  CHECK(sorted_vars(taint_of(function_named(fixtures(), "fe_spec_magnitude"), "IN")) ==
        Names{"data_len", "j", "wrap"});
  CHECK(sorted_vars(taint_of(function_named(fixtures(), "fe_spec_magnitude_fft"), "IN")) == Names{"fftsize", "j"});
}

TEST_CASE("first-occurrence order") {
  auto r = taint_of(function_named(fixtures(), "lextree_hmm_histbin"), "list");
  CHECK(r.variables == Names{"i", "lextree->n_active"});
}

TEST_CASE("tainting an unknown pointer") {
  const auto& fn = function_named(fixtures(), "mgau_eval");
  auto g = build_dependency_graph(fn);
  PointerDecl other{"nothere", "mgau_eval", "int", false, false, 1, {}};
  CHECK_THROWS_AS(taint_pointer(g, other), PointerNotInFunction);
}

TEST_CASE("taint stays inside the function") {
  std::set<std::string> locals;
  const auto& fn = function_named(fixtures(), "mgau_eval");
  visit_preorder(fn.root, [&](const AstNode& n) {
    if (n.kind == NodeKind::ID || n.kind == NodeKind::Decl || n.kind == NodeKind::Param) locals.insert(n.text);
  });
  for (const auto& v : taint_of(fn, "active").variables) CHECK(locals.count(v));
}

TEST_CASE("adding a statement never shrinks the related set") {
  const std::string base = "void f(int *p, int n, int m) { int i, k; for (i = 0; i < n; i++) p[i] = 0; ";
  auto a = parse_source(base + "}");
  auto b = parse_source(base + "k = m; i = k; }");
  auto ra = taint_of(a[0], "p");
  auto rb = taint_of(b[0], "p");
  for (const auto& v : ra.variables) CHECK(rb.contains(v));
  CHECK(rb.contains("m"));
}

TEST_CASE("backward slice keeps writes to related variables only") {
  auto t = parse_source("void f(int *p, int v, int x) { int y; v = x; y = v; p[v] = 1; }");
  auto s = testsupport::slice_of(t[0], "p");
  std::set<std::string> texts;
  for (const auto& st : s.statements) texts.insert(st.text);
  CHECK(texts.count("v = x;"));
  CHECK(!texts.count("y = v;"));
}

TEST_CASE("no related variables keeps only dereferences") {
  auto t = parse_source("void f(int *p, int a) { int b; b = a; *p = 0; a = b; }");
  auto s = testsupport::slice_of(t[0], "p");
  REQUIRE(s.statements.size() == 1);
  CHECK(s.statements[0].text == "*p = 0;");
}

TEST_CASE("control closure adds loop and branch headers") {
  auto t = parse_source(
      "void f(int *p, int n, int m) { int i; for (i = 0; i < n; i++) { if (m > 0) p[i] = 0; } }");
  auto s = testsupport::slice_of(t[0], "p");
  std::set<NodeKind> kinds;
  for (const auto& st : s.statements) kinds.insert(st.kind);
  CHECK(kinds.count(NodeKind::For));
  CHECK(kinds.count(NodeKind::If));
  auto r = taint_of(t[0], "p");
  CHECK(r.contains("i"));
  CHECK(r.contains("n"));
}

TEST_CASE("top-level statement closure is identity") {
  auto t = parse_source("void f(int *p) { *p = 1; }");
  const auto& fn = t[0];
  StatementSet kept;
  visit_preorder(fn.root, [&](const AstNode& n) {
    if (n.kind == NodeKind::Assignment) kept.insert(n.id);
  });
  CHECK(control_closure(fn, kept) == kept);
}

TEST_CASE("dict2pid slice has both loop headers and the fprintf deref") {
  auto s = testsupport::slice_of(function_named(fixtures(), "dict2pid_dump"), "mdef->sseq");
  int fors = 0;
  bool deref_call = false;
  for (const auto& st : s.statements) {
    fors += st.kind == NodeKind::For;
    if (st.text.find("fprintf") != std::string::npos && st.text.find("sseq") != std::string::npos) deref_call = true;
  }
  CHECK(fors == 2);
  CHECK(deref_call);
}

TEST_CASE("unused pointer yields EmptySlice") {
  auto t = parse_source("void f(int *p, int a) { a = a + 1; }");
  CHECK_THROWS_AS(testsupport::slice_of(t[0], "p"), EmptySlice);
  CHECK(isolate_all(t[0]).empty());
}

TEST_CASE("slice soundness: loop init and step only write the pointer or related names") {
  for (const auto& fn : fixtures()) {
    for (const auto& s : isolate_all(fn)) {
      visit_preorder(s.slice_tree.root, [&](const AstNode& n) {
        if (n.kind != NodeKind::For) return;
        const std::size_t steps = n.for_parts.init + n.for_parts.cond + n.for_parts.next;
        for (std::size_t i = 0; i < steps; ++i) {
          if (n.for_parts.cond && i == n.for_parts.init) continue;
          if (dereferences(n.children[i], s.pointer.name)) continue;
          for (const auto& w : writes_in(n.children[i]))
            CHECK_MESSAGE((w.name == s.pointer.name || s.related.contains(w.name)), s.id() << " writes " << w.name);
        }
      });
    }
  }
  auto t = parse_source("void f(double *data, int n) { int j, wrap; for (wrap = 0, j = 0; j < n; wrap++, j++) data[j] = 0; }");
  auto sl = testsupport::slice_of(t[0], "data");
  CHECK(pretty_print(sl.slice_tree.body()).find("wrap") == std::string::npos);
}

TEST_CASE("isolating a slice again is stable") {
  for (const auto& fn : fixtures()) {
    for (const auto& s : isolate_all(fn)) {
      auto again = isolate_all(s.slice_tree);
      bool found = false;
      for (const auto& s2 : again) {
        if (s2.pointer.name != s.pointer.name) continue;
        found = true;
        CHECK(vectorize(s2.slice_tree).counts == vectorize(s.slice_tree).counts);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("render_slice shows original line numbers") {
  auto s = testsupport::slice_of(function_named(fixtures(), "mgau_eval"), "active");
  auto text = render_slice(s);
  CHECK(text.find("mgau_eval:active") != std::string::npos);
  CHECK(text.find(std::to_string(s.statements.front().span.line_start) + " | ") != std::string::npos);
}
