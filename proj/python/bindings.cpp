#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/parser.hpp"
#include "clone_lattice/pipeline.hpp"

namespace py = pybind11;
using namespace clone_lattice;

namespace {

std::vector<PointerSlice> slices_of(const std::string& source, const std::string& file) {
  std::vector<PointerSlice> out;
  for (const auto& fn : parse_translation_unit(source, file)) {
    for (auto& s : isolate_all(fn)) out.push_back(std::move(s));
  }
  return out;
}

py::dict slice_dict(const PointerSlice& s) {
  py::dict d;
  d["id"] = s.id();
  d["function"] = s.origin;
  d["pointer"] = s.pointer.name;
  py::list related;
  for (const auto& v : s.related.variables) related.append(py::make_tuple(v, std::string(role_name(s.related.roles.at(v)))));
  d["related"] = related;
  py::list lines;
  for (const auto& st : s.statements) lines.append(st.span.line_start);
  d["lines"] = lines;
  const auto v = vectorize(s.slice_tree);
  d["vector"] = v.counts;
  d["size"] = v.size;
  d["token_count"] = s.slice_tree.token_count;
  d["text"] = render_slice(s);
  return d;
}

PointerSlice pick(const std::string& source, const std::string& file, const std::string& function,
                  const std::string& pointer) {
  for (auto& s : slices_of(source, file)) {
    if (s.origin == function && s.pointer.name == pointer) return s;
  }
  throw py::key_error(function + ":" + pointer);
}

WeightedVector to_weighted(const std::vector<std::int64_t>& counts) {
  if (counts.size() > kNodeKindCount) throw DimensionMismatch("at most 17 dimensions");
  FeatureVector f;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    f.counts[i] = counts[i];
    f.size += counts[i];
  }
  return make_weighted(f);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pointer-isolated clone detection core";
  m.attr("__version__") = kToolVersion;
  m.attr("NODE_KINDS") = [] {
    std::vector<std::string> k;
    for (std::size_t i = 0; i < kNodeKindCount; ++i) k.emplace_back(node_kind_name(static_cast<NodeKind>(i)));
    return k;
  }();

  py::register_exception<SyntaxError>(m, "SyntaxError_", PyExc_SyntaxError);
  py::register_exception<EmptyCorpus>(m, "EmptyCorpus", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<NonSeparable>(m, "NonSeparable", PyExc_RuntimeError);

  m.def(
      "analyze_json",
      [](const std::string& corpus, double similarity, std::size_t min_tokens, int unroll_bound, int max_iterations,
         double delta_init, std::size_t sample_k, std::uint64_t seed, std::int64_t domain_radius, bool no_slicing) {
        PipelineConfig c;
        c.corpus_dir = corpus;
        c.similarity = similarity;
        c.min_tokens = min_tokens;
        c.unroll_bound = unroll_bound;
        c.max_iterations = max_iterations;
        c.delta_init = delta_init;
        c.sample_k = sample_k;
        c.seed = seed;
        c.domain_radius = domain_radius;
        c.no_slicing = no_slicing;
        py::gil_scoped_release release;
        return report_json(run_pipeline(c));
      },
      py::arg("corpus"), py::arg("similarity") = 0.80, py::arg("min_tokens") = 20, py::arg("unroll_bound") = 2,
      py::arg("max_iterations") = 64, py::arg("delta_init") = 2.0, py::arg("sample_k") = 2, py::arg("seed") = 42,
      py::arg("domain_radius") = 64, py::arg("no_slicing") = false);

  m.def("function_names", [](const std::string& source, const std::string& file) {
    std::vector<std::string> names;
    for (const auto& fn : parse_translation_unit(source, file)) names.push_back(fn.function_name);
    return names;
  }, py::arg("source"), py::arg("file") = "input.c");

  m.def("slices", [](const std::string& source, const std::string& file) {
    py::list out;
    for (const auto& s : slices_of(source, file)) out.append(slice_dict(s));
    return out;
  }, py::arg("source"), py::arg("file") = "input.c");

  m.def("constraints", [](const std::string& source, const std::string& function, const std::string& pointer,
                          int unroll_bound) {
    SymbolicOptions o;
    o.unroll_bound = unroll_bound;
    return symbolic_execute(pick(source, "input.c", function, pointer), o).to_text();
  }, py::arg("source"), py::arg("function"), py::arg("pointer"), py::arg("unroll_bound") = 2);

  m.def("verify", [](const std::string& source_a, const std::string& function_a, const std::string& pointer_a,
                     const std::string& source_b, const std::string& function_b, const std::string& pointer_b) {
    auto r = verify_pair(pick(source_a, "a.c", function_a, pointer_a), pick(source_b, "b.c", function_b, pointer_b));
    return py::make_tuple(std::string(verdict_name(r.verdict)), r.reason);
  }, py::arg("source_a"), py::arg("function_a"), py::arg("pointer_a"), py::arg("source_b"), py::arg("function_b"),
        py::arg("pointer_b"));

  m.def("euclidean_distance", [](const std::vector<double>& a, const std::vector<double>& b) {
    return euclidean_distance(a, b);
  });
  m.def("hamming_distance", [](const std::vector<double>& a, const std::vector<double>& b) {
    return hamming_distance(a, b);
  });
  m.def("cluster_threshold", [](double s, std::int64_t a, std::int64_t b) { return cluster_threshold(s, a, b); });

  m.def("cluster", [](const std::vector<std::vector<std::int64_t>>& vectors, double s, std::size_t min_tokens) {
    std::vector<WeightedVector> v;
    for (const auto& c : vectors) {
      v.push_back(to_weighted(c));
      v.back().base.token_count = min_tokens;
    }
    std::vector<std::vector<std::size_t>> out;
    for (const auto& c : lsh_cluster(v, s, min_tokens)) out.push_back(c.members);
    return out;
  }, py::arg("vectors"), py::arg("similarity"), py::arg("min_tokens") = 0);

  m.def("false_positive_feedback", [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                      double s, double delta_init) {
    FeedbackOptions o;
    o.delta_init = delta_init;
    AstNode none;
    auto r = apply_feedback(to_weighted(a), to_weighted(b), none, none, PairVerdict::FalsePositive, s, o);
    return py::make_tuple(r.a.weighted, r.b.weighted, r.delta);
  }, py::arg("a"), py::arg("b"), py::arg("similarity"), py::arg("delta_init") = 2.0);
}
