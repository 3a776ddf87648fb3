#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clone_lattice/constraints.hpp"
#include "clone_lattice/features.hpp"
#include "clone_lattice/lsh.hpp"
#include "clone_lattice/slicer.hpp"
#include "clone_lattice/symbolic.hpp"

namespace clone_lattice {

enum class PairVerdict : std::uint8_t { TrueClone, FalsePositive, Skipped };

std::string_view verdict_name(PairVerdict v);

struct VerifyResult {
  PairVerdict verdict = PairVerdict::Skipped;
  std::string reason;
};

struct VerifyOptions {
  SymbolicOptions symbolic;
  EquivalenceOptions equivalence;
};

/// TrueClone iff the two constraint sets are equivalent under the derived
/// matching; NoMatching counts as FalsePositive. Unsupported constructs and
/// oversized domains give Skipped.
VerifyResult verify_pair(const PointerSlice& a, const PointerSlice& b, const VerifyOptions& opts = {});
VerifyResult verify_constraints(const ConstraintSet& a, const ConstraintSet& b, const EquivalenceOptions& opts = {});

/// Splits the cluster into k random chunks (k clamped to [1, size/2]) and
/// pairs each chunk's medoid with the chunk member farthest from it. Pairs
/// are (smaller index, larger index), deduplicated, in chunk order.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const CloneCluster& cluster,
                                                              const std::vector<WeightedVector>& vectors,
                                                              std::size_t k, std::uint64_t seed);

struct FeedbackRecord {
  std::pair<std::string, std::string> pair;  // slice ids
  PairVerdict verdict = PairVerdict::TrueClone;
  std::vector<std::size_t> touched_dims;
  double delta = 2.0;
  int iteration = 0;
};

struct FeedbackOptions {
  double delta_init = 2.0;
  double delta_max = 1024.0;
};

struct FeedbackResult {
  WeightedVector a;
  WeightedVector b;
  std::optional<AstNode> residual_a;  // TrueClone only
  std::optional<AstNode> residual_b;
  std::vector<std::size_t> touched_dims;
  double delta = 1.0;
};

/// TrueClone: nodes outside the LCS of the post-order kind sequences are
/// removed from both trees and the vectors re-derived.
/// FalsePositive: every dimension t where the base counts differ becomes
/// min + excess * delta on each side; delta doubles from delta_init until the
/// pair's distance exceeds the clustering threshold. Throws NonSeparable when
/// delta_max is not enough (or no dimension differs).
FeedbackResult apply_feedback(const WeightedVector& vi, const WeightedVector& vj, const AstNode& ti,
                              const AstNode& tj, PairVerdict verdict, double s,
                              const FeedbackOptions& opts = {});

struct ConvergenceEntry {
  int iteration = 0;
  std::size_t clusters = 0;
  std::size_t pairs_verified = 0;
  std::size_t fps_eliminated = 0;
  std::size_t tps_confirmed = 0;
  std::size_t skipped = 0;
  std::size_t non_separable = 0;
};

struct ConvergenceLog {
  std::vector<ConvergenceEntry> entries;
};

/// One clustered unit: a slice (or a whole function in no-slicing mode) and
/// its vector.
struct CorpusItem {
  PointerSlice slice;
  WeightedVector vector;
};

struct LoopOptions {
  double similarity = 0.80;
  std::size_t min_tokens = 20;
  int max_iterations = 64;
  std::size_t sample_k = 2;
  std::uint64_t seed = 42;
  FeedbackOptions feedback;
  VerifyOptions verify;
};

struct ConvergenceResult {
  std::vector<CloneCluster> initial_clusters;
  std::vector<CloneCluster> clusters;
  std::vector<WeightedVector> vectors;  // final weights
  std::vector<double> dimension_factors;
  ConvergenceLog log;
  std::vector<FeedbackRecord> records;
  std::map<std::pair<std::size_t, std::size_t>, VerifyResult> verdicts;
  std::vector<std::pair<std::size_t, std::size_t>> exempt;  // NonSeparable pairs
  bool converged = false;
};

/// Repeats sample -> verify -> feedback -> re-cluster until an iteration sees
/// no new false positive and no new true clone, or max_iterations is hit.
/// False-positive deltas are folded into one factor per dimension shared by
/// the whole corpus (the running maximum), so weights only grow.
ConvergenceResult run_until_convergence(const std::vector<CorpusItem>& corpus, const LoopOptions& opts);

}  // namespace clone_lattice
