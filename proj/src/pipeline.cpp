#include "clone_lattice/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include <spdlog/spdlog.h>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/parser.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace clone_lattice {

void PipelineConfig::validate() const {
  if (!(similarity >= 0.70 && similarity <= 1.00)) throw std::invalid_argument("--similarity must lie in [0.70, 1.00]");
  if (min_tokens < 1) throw std::invalid_argument("--min-tokens must be at least 1");
  if (unroll_bound < 1) throw std::invalid_argument("--unroll-bound must be at least 1");
  if (max_iterations < 1) throw std::invalid_argument("--max-iterations must be at least 1");
  if (!(delta_init > 1.0)) throw std::invalid_argument("--delta-init must be greater than 1");
  if (sample_k < 1) throw std::invalid_argument("--sample-k must be at least 1");
  if (domain_radius < 1) throw std::invalid_argument("--domain-radius must be at least 1");
}

std::vector<SourceFile> load_corpus(const std::string& dir) {
  if (dir.empty() || !fs::is_directory(dir)) throw EmptyCorpus("corpus directory not found: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".c") paths.push_back(entry.path());
  }
  if (paths.empty()) throw EmptyCorpus("no .c files under " + dir);
  std::sort(paths.begin(), paths.end(), [&](const fs::path& a, const fs::path& b) {
    return fs::relative(a, dir).generic_string() < fs::relative(b, dir).generic_string();
  });

  std::vector<SourceFile> out;
  for (const auto& p : paths) {
    SourceFile f;
    f.path = fs::relative(p, dir).generic_string();
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      f.functions = parse_translation_unit(ss.str(), f.path);
    } catch (const SyntaxError& e) {
      spdlog::warn("skipping {}", e.what());
      f.error = e.what();
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string unit_id(const PointerSlice& unit) {
  if (unit.pointer.name.empty()) return unit.slice_tree.root.span.file + ":" + unit.origin;
  return unit.id();
}

std::vector<CorpusItem> build_units(const std::vector<SourceFile>& files, bool whole_functions) {
  std::vector<CorpusItem> out;
  for (const auto& f : files) {
    for (const auto& fn : f.functions) {
      if (whole_functions) {
        CorpusItem item;
        item.slice.origin = fn.function_name;
        item.slice.slice_tree = fn;
        item.slice.related.pointer.declared_in = fn.function_name;
        FeatureVector v = vectorize(fn);
        v.slice_ref = unit_id(item.slice);
        item.vector = make_weighted(std::move(v));
        out.push_back(std::move(item));
        continue;
      }
      for (auto& slice : isolate_all(fn)) {
        CorpusItem item;
        FeatureVector v = vectorize(slice.slice_tree);
        v.slice_ref = slice.id();
        item.vector = make_weighted(std::move(v));
        item.slice = std::move(slice);
        out.push_back(std::move(item));
      }
    }
  }
  return out;
}

std::size_t Report::count(PairVerdict v) const {
  std::size_t n = 0;
  for (const auto& [p, r] : loop.verdicts) n += r.verdict == v;
  return n;
}

namespace {

bool is_exempt(const ConvergenceResult& loop, std::pair<std::size_t, std::size_t> p) {
  return std::find(loop.exempt.begin(), loop.exempt.end(), p) != loop.exempt.end();
}

}  // namespace

std::size_t Report::fp_eliminated() const {
  std::size_t n = 0;
  for (const auto& [p, r] : loop.verdicts) {
    if (r.verdict != PairVerdict::FalsePositive || is_exempt(loop, p)) continue;
    n += !within_threshold(loop.vectors[p.first], loop.vectors[p.second], config.similarity);
  }
  return n;
}

std::size_t Report::fp_remaining() const {
  std::size_t n = 0;
  for (const auto& [p, r] : loop.verdicts) {
    if (r.verdict != PairVerdict::FalsePositive || is_exempt(loop, p)) continue;
    n += within_threshold(loop.vectors[p.first], loop.vectors[p.second], config.similarity);
  }
  return n;
}

std::optional<double> Report::elimination_percentage() const {
  const std::size_t total = count(PairVerdict::FalsePositive);
  if (total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(fp_eliminated()) / static_cast<double>(total);
}

Report run_pipeline(const PipelineConfig& config) {
  config.validate();
  Report r;
  r.config = config;
  r.files = load_corpus(config.corpus_dir);
  const bool any_parsed = std::any_of(r.files.begin(), r.files.end(), [](const SourceFile& f) { return !f.error; });
  if (!any_parsed) throw EmptyCorpus("no parseable file under " + config.corpus_dir);

  r.units = build_units(r.files, config.no_slicing);
  for (const auto& f : r.files) {
    r.file_function_counts.push_back(f.functions.size());
    for (const auto& fn : f.functions) {
      FunctionSummary s{f.path, fn.function_name, enumerate_pointers(fn).size(), 0};
      for (const auto& u : r.units) {
        if (!u.slice.pointer.name.empty() && u.slice.origin == fn.function_name &&
            u.slice.slice_tree.root.span.file == f.path) {
          ++s.slices;
        }
      }
      r.functions.push_back(std::move(s));
    }
  }
  spdlog::debug("{} files, {} functions, {} units", r.files.size(), r.functions.size(), r.units.size());

  std::vector<WeightedVector> vectors;
  for (const auto& u : r.units) vectors.push_back(u.vector);
  r.clusters_before = lsh_cluster(vectors, config.similarity, config.min_tokens);
  for (const auto& [a, b] : lsh_pairs(vectors, config.similarity, config.min_tokens)) {
    r.pairs.push_back(PairReport{a, b, euclidean_distance(vectors[a], vectors[b]), std::nullopt});
  }

  if (config.no_slicing) {
    r.clusters_after = r.clusters_before;
    r.loop.initial_clusters = r.clusters_before;
    r.loop.clusters = r.clusters_before;
    r.loop.vectors = vectors;
    r.loop.dimension_factors.assign(kNodeKindCount, 1.0);
    return r;
  }

  LoopOptions opts;
  opts.similarity = config.similarity;
  opts.min_tokens = config.min_tokens;
  opts.max_iterations = config.max_iterations;
  opts.sample_k = config.sample_k;
  opts.seed = config.seed;
  opts.feedback.delta_init = config.delta_init;
  opts.verify.symbolic.unroll_bound = config.unroll_bound;
  opts.verify.equivalence.domain_radius = config.domain_radius;
  r.loop = run_until_convergence(r.units, opts);
  r.clusters_after = r.loop.clusters;
  r.verified = true;
  for (auto& p : r.pairs) {
    auto it = r.loop.verdicts.find({p.a, p.b});
    if (it != r.loop.verdicts.end()) p.verdict = it->second;
  }
  return r;
}

namespace {

struct LineRange {
  int start = 0;
  int end = 0;
};

LineRange unit_lines(const PointerSlice& u) {
  if (u.statements.empty()) return {u.slice_tree.root.span.line_start, u.slice_tree.root.span.line_end};
  LineRange r{u.statements.front().span.line_start, u.statements.front().span.line_end};
  for (const auto& s : u.statements) {
    r.start = std::min(r.start, s.span.line_start);
    r.end = std::max(r.end, s.span.line_end);
  }
  return r;
}

ordered_json span_json(const PointerSlice& u) {
  const LineRange lr = unit_lines(u);
  ordered_json j;
  j["file"] = u.slice_tree.root.span.file;
  j["line_start"] = lr.start;
  j["line_end"] = lr.end;
  return j;
}

ordered_json clusters_json(const std::vector<CloneCluster>& clusters, const std::vector<CorpusItem>& units) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : clusters) {
    ordered_json j;
    ordered_json members = ordered_json::array();
    for (auto m : c.members) members.push_back(unit_id(units[m].slice));
    j["members"] = members;
    j["similarity"] = c.similarity;
    j["threshold"] = c.threshold;
    arr.push_back(j);
  }
  return arr;
}

ordered_json nullable(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

std::string report_json(const Report& r) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", "clone-lattice"}, {"version", kToolVersion}};

  const auto& c = r.config;
  j["config"] = {{"corpus_dir", c.corpus_dir},       {"similarity", c.similarity},
                 {"min_tokens", c.min_tokens},       {"unroll_bound", c.unroll_bound},
                 {"max_iterations", c.max_iterations}, {"delta_init", c.delta_init},
                 {"sample_k", c.sample_k},           {"seed", c.seed},
                 {"domain_radius", c.domain_radius}, {"no_slicing", c.no_slicing}};

  ordered_json files = ordered_json::array();
  for (std::size_t i = 0; i < r.files.size(); ++i) {
    const auto& f = r.files[i];
    files.push_back({{"file", f.path},
                     {"functions", i < r.file_function_counts.size() ? r.file_function_counts[i] : 0},
                     {"error", f.error ? ordered_json(*f.error) : ordered_json(nullptr)}});
  }
  j["files"] = files;

  ordered_json functions = ordered_json::array();
  for (const auto& f : r.functions) {
    functions.push_back({{"file", f.file}, {"function", f.function}, {"pointers", f.pointers}, {"slices", f.slices}});
  }
  j["functions"] = functions;

  ordered_json units = ordered_json::array();
  for (const auto& u : r.units) {
    ordered_json ju;
    ju["id"] = unit_id(u.slice);
    ju["file"] = u.slice.slice_tree.root.span.file;
    ju["function"] = u.slice.origin;
    ju["pointer"] = u.slice.pointer.name.empty() ? ordered_json(nullptr) : ordered_json(u.slice.pointer.name);
    ju["span"] = span_json(u.slice);
    ordered_json lines = ordered_json::array();
    for (const auto& s : u.slice.statements) lines.push_back(s.span.line_start);
    ju["lines"] = lines;
    ordered_json related = ordered_json::array();
    for (const auto& v : u.slice.related.variables) {
      related.push_back({{"name", v}, {"role", std::string(role_name(u.slice.related.roles.at(v)))}});
    }
    ju["related"] = related;
    ju["token_count"] = u.vector.base.token_count;
    ju["vector"] = u.vector.base.counts;
    units.push_back(ju);
  }
  j["units"] = units;

  j["clusters_before"] = clusters_json(r.clusters_before, r.units);
  j["clusters_after"] = clusters_json(r.clusters_after, r.units);

  ordered_json pairs = ordered_json::array();
  for (const auto& p : r.pairs) {
    ordered_json jp;
    jp["a"] = unit_id(r.units[p.a].slice);
    jp["b"] = unit_id(r.units[p.b].slice);
    jp["a_span"] = span_json(r.units[p.a].slice);
    jp["b_span"] = span_json(r.units[p.b].slice);
    jp["distance"] = p.distance;
    jp["verdict"] = p.verdict ? ordered_json(std::string(verdict_name(p.verdict->verdict))) : ordered_json(nullptr);
    pairs.push_back(jp);
  }
  j["clone_pairs"] = pairs;

  ordered_json verdicts = ordered_json::array();
  for (const auto& [p, v] : r.loop.verdicts) {
    verdicts.push_back({{"a", unit_id(r.units[p.first].slice)},
                        {"b", unit_id(r.units[p.second].slice)},
                        {"verdict", std::string(verdict_name(v.verdict))},
                        {"reason", v.reason}});
  }
  j["verdicts"] = verdicts;

  ordered_json feedback = ordered_json::array();
  for (const auto& rec : r.loop.records) {
    ordered_json dims = ordered_json::array();
    for (auto t : rec.touched_dims) dims.push_back(std::string(node_kind_name(static_cast<NodeKind>(t))));
    feedback.push_back({{"iteration", rec.iteration},
                        {"a", rec.pair.first},
                        {"b", rec.pair.second},
                        {"verdict", std::string(verdict_name(rec.verdict))},
                        {"delta", rec.delta},
                        {"touched_dims", dims}});
  }
  j["feedback"] = feedback;

  ordered_json log = ordered_json::array();
  for (const auto& e : r.loop.log.entries) {
    log.push_back({{"iteration", e.iteration},
                   {"clusters", e.clusters},
                   {"pairs_verified", e.pairs_verified},
                   {"fps_eliminated", e.fps_eliminated},
                   {"tps_confirmed", e.tps_confirmed},
                   {"skipped", e.skipped},
                   {"non_separable", e.non_separable}});
  }
  j["convergence"] = log;

  ordered_json factors = ordered_json::object();
  for (std::size_t t = 0; t < r.loop.dimension_factors.size(); ++t) {
    factors[std::string(node_kind_name(static_cast<NodeKind>(t)))] = r.loop.dimension_factors[t];
  }
  j["dimension_factors"] = factors;

  j["summary"] = {{"units", r.units.size()},
                  {"clusters_before", r.clusters_before.size()},
                  {"clusters_after", r.clusters_after.size()},
                  {"clone_pairs", r.pairs.size()},
                  {"verified", r.verified},
                  {"true_clones", r.count(PairVerdict::TrueClone)},
                  {"false_positives", r.count(PairVerdict::FalsePositive)},
                  {"skipped", r.count(PairVerdict::Skipped)},
                  {"non_separable", r.loop.exempt.size()},
                  {"fp_eliminated", r.fp_eliminated()},
                  {"fp_remaining", r.fp_remaining()},
                  {"elimination_percentage", nullable(r.elimination_percentage())},
                  {"iterations", r.loop.log.entries.size()},
                  {"converged", r.loop.converged}};
  return j.dump(2) + "\n";
}

void emit_report(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << report_json(report);
  if (!out) throw IoError("failed writing " + path);
}

std::string report_summary(const Report& r) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& f : r.files) failed += f.error.has_value();
  os << "corpus      " << r.config.corpus_dir << " (" << r.files.size() << " files, " << failed << " skipped)\n";
  os << "functions   " << r.functions.size() << "\n";
  os << "units       " << r.units.size() << (r.config.no_slicing ? " whole functions" : " pointer slices") << "\n";
  os << "similarity  " << r.config.similarity << "  min tokens " << r.config.min_tokens << "\n";
  os << "clusters    " << r.clusters_before.size() << " before feedback, " << r.clusters_after.size() << " after\n";
  os << "pairs       " << r.pairs.size() << " clustered\n";
  if (r.verified) {
    os << "verdicts    " << r.count(PairVerdict::TrueClone) << " true clones, " << r.count(PairVerdict::FalsePositive)
       << " false positives, " << r.count(PairVerdict::Skipped) << " skipped, " << r.loop.exempt.size()
       << " non-separable\n";
    os << "feedback    " << r.loop.log.entries.size() << " iterations, " << r.fp_eliminated() << " eliminated, "
       << r.fp_remaining() << " remaining";
    if (auto pct = r.elimination_percentage()) os << " (" << std::fixed << std::setprecision(2) << *pct << "%)";
    os << "\n";
  }
  return os.str();
}

}  // namespace clone_lattice
