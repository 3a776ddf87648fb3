#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "clone_lattice/dependency.hpp"
#include "clone_lattice/errors.hpp"
#include "clone_lattice/parser.hpp"
#include "clone_lattice/pipeline.hpp"

using namespace clone_lattice;

namespace {

// usage and corpus problems
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("clone-lattice");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("CLONE_LATTICE_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

std::vector<AstTree> parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_translation_unit(ss.str(), path);
}

struct FragmentSpec {
  std::string file;
  std::string function;
  std::string pointer;
};

FragmentSpec parse_spec(const std::string& text) {
  FragmentSpec s;
  auto c1 = text.find(':');
  s.file = text.substr(0, c1);
  if (c1 == std::string::npos) return s;
  auto c2 = text.find(':', c1 + 1);
  s.function = text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1);
  if (c2 != std::string::npos) s.pointer = text.substr(c2 + 1);
  return s;
}

std::vector<PointerSlice> select_slices(const std::string& file, const std::string& function,
                                        const std::string& pointer) {
  std::vector<PointerSlice> out;
  bool seen_function = false;
  for (const auto& fn : parse_file(file)) {
    if (!function.empty() && fn.function_name != function) continue;
    seen_function = true;
    for (auto& s : isolate_all(fn)) {
      if (pointer.empty() || s.pointer.name == pointer) out.push_back(std::move(s));
    }
  }
  if (!function.empty() && !seen_function) throw UsageError("no function " + function + " in " + file);
  return out;
}

PointerSlice select_one(const std::string& text) {
  const FragmentSpec spec = parse_spec(text);
  auto slices = select_slices(spec.file, spec.function, spec.pointer);
  if (slices.empty()) throw UsageError("no pointer slice matches " + text);
  if (slices.size() > 1) {
    std::string msg = text + " is ambiguous:";
    for (const auto& s : slices) msg += " " + s.id();
    throw UsageError(msg);
  }
  return std::move(slices.front());
}

void add_pipeline_flags(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--similarity", cfg.similarity, "Similarity S")->check(CLI::Range(0.70, 1.00));
  cmd->add_option("--min-tokens", cfg.min_tokens, "Smallest unit clustered, in tokens");
  cmd->add_option("--unroll-bound", cfg.unroll_bound, "Loop unrolling bound for non-affine loops");
  cmd->add_option("--domain-radius", cfg.domain_radius, "Enumeration radius for equivalence checks");
  cmd->add_option("--max-iterations", cfg.max_iterations, "Feedback iteration cap");
  cmd->add_option("--delta-init", cfg.delta_init, "Initial feedback weight");
  cmd->add_option("--sample-k", cfg.sample_k, "Chunks sampled per cluster");
  cmd->add_option("--seed", cfg.seed, "Sampling seed");
}

std::string format_vector(const FeatureVector& v) {
  std::string s = "<";
  for (std::size_t i = 0; i < v.counts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.counts[i]);
  }
  return s + ">";
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Pointer-isolated clone detection with constraint-checked feedback", "clone-lattice"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::string stride;
  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline over a corpus");
  analyze->add_option("--corpus", cfg.corpus_dir, "Directory of .c files")->required();
  add_pipeline_flags(analyze, cfg);
  analyze->add_option("--stride", stride, "Accepted for compatibility; ignored");
  analyze->add_option("--report", cfg.report_path, "Write the JSON report here ('-' for stdout)");
  analyze->add_flag("--no-slicing", cfg.no_slicing, "Cluster whole functions instead of pointer slices");

  std::string slice_file, slice_function, slice_pointer;
  bool dot = false;
  auto* slice = app.add_subcommand("slice", "Print the pointer slices of a file");
  slice->add_option("file", slice_file)->required();
  slice->add_option("--function", slice_function);
  slice->add_option("--pointer", slice_pointer);
  slice->add_flag("--dot", dot, "Print the dependency graph in DOT format instead");

  std::string vec_file;
  bool vec_whole = false;
  auto* vectors = app.add_subcommand("vectors", "Print characteristic vectors");
  vectors->add_option("file", vec_file)->required();
  vectors->add_flag("--no-slicing", vec_whole, "One vector per function");

  std::string left, right;
  int unroll = 2;
  std::int64_t radius = 64;
  auto* verify = app.add_subcommand("verify", "Compare the constraint sets of two slices");
  verify->add_option("left", left, "FILE[:FUNCTION[:POINTER]]")->required();
  verify->add_option("right", right, "FILE[:FUNCTION[:POINTER]]")->required();
  verify->add_option("--unroll-bound", unroll);
  verify->add_option("--domain-radius", radius);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      const Report report = run_pipeline(cfg);
      if (cfg.report_path == "-") {
        std::cout << report_json(report);
      } else {
        if (!cfg.report_path.empty()) emit_report(report, cfg.report_path);
        std::cout << report_summary(report);
      }
    } else if (*slice) {
      if (dot) {
        for (const auto& fn : parse_file(slice_file)) {
          if (!slice_function.empty() && fn.function_name != slice_function) continue;
          std::cout << build_dependency_graph(fn).to_dot();
        }
      } else {
        for (const auto& s : select_slices(slice_file, slice_function, slice_pointer)) {
          std::cout << render_slice(s) << "\n";
        }
      }
    } else if (*vectors) {
      std::vector<SourceFile> files(1);
      files[0].path = vec_file;
      files[0].functions = parse_file(vec_file);
      for (const auto& u : build_units(files, vec_whole)) {
        std::cout << unit_id(u.slice) << " " << format_vector(u.vector.base) << " size=" << u.vector.base.size
                  << " tokens=" << u.vector.base.token_count << "\n";
      }
    } else if (*verify) {
      const PointerSlice a = select_one(left);
      const PointerSlice b = select_one(right);
      VerifyOptions opts;
      opts.symbolic.unroll_bound = unroll;
      opts.equivalence.domain_radius = radius;
      try {
        std::cout << symbolic_execute(a, opts.symbolic).to_text() << symbolic_execute(b, opts.symbolic).to_text();
      } catch (const UnsupportedConstruct& e) {
        std::cout << "; " << e.what() << "\n";
      }
      const VerifyResult r = verify_pair(a, b, opts);
      std::cout << "verdict " << verdict_name(r.verdict);
      if (!r.reason.empty()) std::cout << " (" << r.reason << ")";
      std::cout << "\n";
    }
  } catch (const EmptyCorpus& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const SyntaxError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return 1;
  }
  return 0;
}
