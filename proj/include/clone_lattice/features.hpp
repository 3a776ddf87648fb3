#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clone_lattice/ast.hpp"

namespace clone_lattice {

/// Node-kind occurrence counts of one tree, indexed by NodeKind order.
struct FeatureVector {
  std::vector<std::int64_t> counts = std::vector<std::int64_t>(kNodeKindCount, 0);
  std::int64_t size = 0;
  std::string slice_ref;
  std::size_t token_count = 0;
};

/// One feedback step folded into a vector's weights.
struct AppliedFeedback {
  std::string partner;
  int iteration = 0;
  double delta = 1.0;
  std::vector<std::size_t> dims;
};

struct WeightedVector {
  FeatureVector base;
  std::vector<double> weighted;
  std::vector<AppliedFeedback> provenance;
};

FeatureVector vectorize(const AstNode& node);
FeatureVector vectorize(const AstTree& tree);

/// weighted = counts, no provenance.
WeightedVector make_weighted(FeatureVector base);

struct LcsResult {
  std::size_t length = 0;
  std::vector<bool> in_a;  // per position of a: part of the chosen LCS
  std::vector<bool> in_b;
};

/// Longest common subsequence with a deterministic traceback.
LcsResult lcs(const std::vector<NodeKind>& a, const std::vector<NodeKind>& b);

/// S = 2*Shared / (2*Shared + L + R) over post-order kind sequences.
double similarity(const AstNode& t1, const AstNode& t2);
double similarity(const AstTree& t1, const AstTree& t2);

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b);
double euclidean_distance(const WeightedVector& a, const WeightedVector& b);
double hamming_distance(const std::vector<double>& a, const std::vector<double>& b);
double hamming_distance(const WeightedVector& a, const WeightedVector& b);

/// T = sqrt(2 (1 - s) min(size_a, size_b)).
double cluster_threshold(double s, std::int64_t size_a, std::int64_t size_b);
double cluster_threshold(double s, const FeatureVector& a, const FeatureVector& b);

/// The clustering predicate: distance of the weighted arrays within the
/// threshold of the base sizes.
bool within_threshold(const WeightedVector& a, const WeightedVector& b, double s);

/// Removes the nodes whose post-order position is not marked in `keep`; the
/// children of a removed node take its place in the parent.
AstNode remove_unmarked(const AstNode& root, const std::vector<bool>& keep);

}  // namespace clone_lattice
