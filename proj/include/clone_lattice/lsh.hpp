#pragma once

#include <cstdint>
#include <vector>

#include "clone_lattice/features.hpp"

namespace clone_lattice {

struct CloneCluster {
  std::vector<std::size_t> members;  // indices into the clustered vector list, ascending
  double similarity = 0.0;
  double threshold = 0.0;  // T at the smallest member size
};

struct LshParams {
  std::size_t projections = 4;
  std::uint64_t seed = 0x5eed;
};

/// Clusters vectors whose slices have at least `min_tokens` tokens. Random
/// projections select candidate pairs, every candidate is checked with
/// within_threshold, and clusters are the connected components of the
/// verified pairs. Singletons are dropped. Clusters are ordered by their
/// first member.
std::vector<CloneCluster> lsh_cluster(const std::vector<WeightedVector>& vectors, double s,
                                      std::size_t min_tokens, const LshParams& params = {});

/// Pairs (i < j) accepted by the candidate filter and verified. Exposed for
/// testing and pair reporting.
std::vector<std::pair<std::size_t, std::size_t>> lsh_pairs(const std::vector<WeightedVector>& vectors,
                                                           double s, std::size_t min_tokens,
                                                           const LshParams& params = {});

}  // namespace clone_lattice
