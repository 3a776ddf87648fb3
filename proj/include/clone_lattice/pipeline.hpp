#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clone_lattice/feedback.hpp"

namespace clone_lattice {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kReportSchemaVersion = 1;

struct PipelineConfig {
  std::string corpus_dir;
  double similarity = 0.80;
  std::size_t min_tokens = 20;
  int unroll_bound = 2;
  int max_iterations = 64;
  double delta_init = 2.0;
  std::size_t sample_k = 2;
  std::uint64_t seed = 42;
  std::int64_t domain_radius = 64;
  std::string report_path;
  bool no_slicing = false;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct SourceFile {
  std::string path;  // relative to the corpus directory
  std::vector<AstTree> functions;
  std::optional<std::string> error;
};

/// Reads every *.c file under `dir` (sorted by relative path). Files that
/// fail to parse carry `error`. Throws EmptyCorpus when there are no .c files.
std::vector<SourceFile> load_corpus(const std::string& dir);

/// Clustering units: one per pointer slice, or one per function when
/// `whole_functions` is set (the unit's pointer name is then empty).
std::vector<CorpusItem> build_units(const std::vector<SourceFile>& files, bool whole_functions);

/// "file:function" for whole-function units, "file:function:pointer" otherwise.
std::string unit_id(const PointerSlice& unit);

struct FunctionSummary {
  std::string file;
  std::string function;
  std::size_t pointers = 0;
  std::size_t slices = 0;
};

struct PairReport {
  std::size_t a = 0;
  std::size_t b = 0;
  double distance = 0.0;
  std::optional<VerifyResult> verdict;
};

struct Report {
  PipelineConfig config;
  std::vector<SourceFile> files;  // functions dropped after analysis; error kept
  std::vector<std::size_t> file_function_counts;
  std::vector<FunctionSummary> functions;
  std::vector<CorpusItem> units;
  std::vector<CloneCluster> clusters_before;
  std::vector<CloneCluster> clusters_after;
  std::vector<PairReport> pairs;  // clustered pairs before feedback
  ConvergenceResult loop;
  bool verified = false;  // false in no-slicing mode

  std::size_t count(PairVerdict v) const;
  std::size_t fp_eliminated() const;
  std::size_t fp_remaining() const;
  std::optional<double> elimination_percentage() const;
};

Report run_pipeline(const PipelineConfig& config);

/// Stable-key JSON rendering of the report.
std::string report_json(const Report& report);

/// Writes report_json to `path`. Throws IoError.
void emit_report(const Report& report, const std::string& path);

/// Short human-readable summary.
std::string report_summary(const Report& report);

}  // namespace clone_lattice
