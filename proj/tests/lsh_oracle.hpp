#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "clone_lattice/features.hpp"

namespace lshoracle {

// O(n^2) single linkage over the same pairwise predicate
inline std::vector<std::vector<std::size_t>> brute_force(const std::vector<clone_lattice::WeightedVector>& v, double s,
                                                         std::size_t min_tok) {
  const std::size_t n = v.size();
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) { return comp[x] == x ? x : comp[x] = root(comp[x]); };
  std::vector<bool> linked(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[i].base.token_count < min_tok || v[j].base.token_count < min_tok) continue;
      double d2 = 0;
      for (std::size_t t = 0; t < v[i].weighted.size(); ++t) {
        const double d = v[i].weighted[t] - v[j].weighted[t];
        d2 += d * d;
      }
      const double limit = 2.0 * (1.0 - s) * static_cast<double>(std::min(v[i].base.size, v[j].base.size));
      if (d2 <= limit + 1e-9) {
        linked[i] = linked[j] = true;
        const auto a = root(i), b = root(j);
        comp[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i)
    if (linked[i]) groups[root(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, m] : groups) out.push_back(m);
  return out;
}

inline clone_lattice::WeightedVector vec(const std::vector<std::int64_t>& head, std::size_t tokens = 100) {
  clone_lattice::FeatureVector f;
  for (std::size_t i = 0; i < head.size(); ++i) f.counts[i] = head[i];
  for (auto c : head) f.size += c;
  f.token_count = tokens;
  return clone_lattice::make_weighted(f);
}

}  // namespace lshoracle
