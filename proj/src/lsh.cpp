#include "clone_lattice/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace clone_lattice {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

double threshold_for_size(double s, std::int64_t size) {
  return std::sqrt(2.0 * (1.0 - s) * static_cast<double>(size));
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> lsh_pairs(const std::vector<WeightedVector>& vectors,
                                                           double s, std::size_t min_tokens,
                                                           const LshParams& params) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("similarity must lie in (0, 1]");
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].base.token_count >= min_tokens) live.push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (live.size() < 2) return out;

  const std::size_t dims = vectors[live[0]].weighted.size();
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> proj(std::max<std::size_t>(1, params.projections), std::vector<double>(dims));
  for (auto& u : proj) {
    double norm = 0.0;
    for (auto& x : u) {
      x = gauss(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : u) x /= norm;
  }

  std::vector<std::int64_t> sizes;
  for (auto i : live) sizes.push_back(vectors[i].base.size);
  std::nth_element(sizes.begin(), sizes.begin() + sizes.size() / 2, sizes.end());
  double width = threshold_for_size(s, sizes[sizes.size() / 2]);
  if (width <= 0.0) width = 1.0;

  // bucket[v][k]: bucket of vector v on projection k
  std::vector<std::vector<std::int64_t>> bucket(vectors.size());
  for (auto i : live) {
    const auto& w = vectors[i].weighted;
    if (w.size() != dims) throw std::invalid_argument("vectors of different dimensionality");
    for (const auto& u : proj) {
      const double dot = std::inner_product(w.begin(), w.end(), u.begin(), 0.0);
      bucket[i].push_back(static_cast<std::int64_t>(std::floor(dot / width)));
    }
  }

  std::vector<std::size_t> order = live;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bucket[a][0] != bucket[b][0] ? bucket[a][0] < bucket[b][0] : a < b;
  });

  // |u.(a-b)| <= |a-b| <= T, so partners lie within ceil(T / width) buckets
  // on every projection; T for a pair never exceeds T at either member's size.
  for (std::size_t x = 0; x < order.size(); ++x) {
    const std::size_t a = order[x];
    const auto reach = static_cast<std::int64_t>(std::ceil(threshold_for_size(s, vectors[a].base.size) / width)) + 1;
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      const std::size_t b = order[y];
      if (bucket[b][0] - bucket[a][0] > reach) break;
      bool near = true;
      for (std::size_t k = 1; k < proj.size() && near; ++k) {
        near = std::llabs(bucket[a][k] - bucket[b][k]) <= reach;
      }
      if (near && within_threshold(vectors[a], vectors[b], s)) out.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CloneCluster> lsh_cluster(const std::vector<WeightedVector>& vectors, double s,
                                      std::size_t min_tokens, const LshParams& params) {
  UnionFind uf(vectors.size());
  for (const auto& [a, b] : lsh_pairs(vectors, s, min_tokens, params)) uf.unite(a, b);

  std::vector<std::vector<std::size_t>> groups(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) groups[uf.find(i)].push_back(i);

  std::vector<CloneCluster> out;
  for (auto& g : groups) {
    if (g.size() < 2) continue;
    CloneCluster c;
    c.members = std::move(g);
    c.similarity = s;
    std::int64_t smallest = vectors[c.members[0]].base.size;
    for (auto m : c.members) smallest = std::min(smallest, vectors[m].base.size);
    c.threshold = threshold_for_size(s, smallest);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace clone_lattice
