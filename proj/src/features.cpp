#include "clone_lattice/features.hpp"

#include <algorithm>
#include <cmath>

#include "clone_lattice/errors.hpp"

namespace clone_lattice {

FeatureVector vectorize(const AstNode& node) {
  FeatureVector v;
  visit_postorder(node, [&](const AstNode& n) {
    ++v.counts[static_cast<std::size_t>(n.kind)];
    ++v.size;
  });
  return v;
}

FeatureVector vectorize(const AstTree& tree) {
  FeatureVector v = vectorize(tree.root);
  v.slice_ref = tree.function_name;
  v.token_count = tree.token_count;
  return v;
}

WeightedVector make_weighted(FeatureVector base) {
  WeightedVector w;
  w.weighted.assign(base.counts.begin(), base.counts.end());
  w.base = std::move(base);
  return w;
}

LcsResult lcs(const std::vector<NodeKind>& a, const std::vector<NodeKind>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::uint32_t> dp((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return dp[i * (m + 1) + j]; };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1 : std::max(at(i + 1, j), at(i, j + 1));
    }
  }
  LcsResult r;
  r.length = at(0, 0);
  r.in_a.assign(n, false);
  r.in_b.assign(m, false);
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j] && at(i, j) == at(i + 1, j + 1) + 1) {
      r.in_a[i++] = true;
      r.in_b[j++] = true;
    } else if (at(i + 1, j) >= at(i, j + 1)) {
      ++i;
    } else {
      ++j;
    }
  }
  return r;
}

double similarity(const AstNode& t1, const AstNode& t2) {
  const auto a = postorder_kinds(t1);
  const auto b = postorder_kinds(t2);
  const double shared = static_cast<double>(lcs(a, b).length);
  const double left = static_cast<double>(a.size()) - shared;
  const double right = static_cast<double>(b.size()) - shared;
  if (shared == 0.0) return 0.0;
  return 2.0 * shared / (2.0 * shared + left + right);
}

double similarity(const AstTree& t1, const AstTree& t2) { return similarity(t1.root, t2.root); }

namespace {

void check_dims(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("vector lengths differ: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  check_dims(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return sum;
}

}  // namespace

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
  return std::sqrt(squared_distance(a, b));
}

double euclidean_distance(const WeightedVector& a, const WeightedVector& b) {
  return euclidean_distance(a.weighted, b.weighted);
}

double hamming_distance(const std::vector<double>& a, const std::vector<double>& b) {
  check_dims(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double hamming_distance(const WeightedVector& a, const WeightedVector& b) {
  return hamming_distance(a.weighted, b.weighted);
}

double cluster_threshold(double s, std::int64_t size_a, std::int64_t size_b) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("similarity must lie in (0, 1]");
  return std::sqrt(2.0 * (1.0 - s) * static_cast<double>(std::min(size_a, size_b)));
}

double cluster_threshold(double s, const FeatureVector& a, const FeatureVector& b) {
  return cluster_threshold(s, a.size, b.size);
}

bool within_threshold(const WeightedVector& a, const WeightedVector& b, double s) {
  const double t = 2.0 * (1.0 - s) * static_cast<double>(std::min(a.base.size, b.base.size));
  return squared_distance(a.weighted, b.weighted) <= t + 1e-9;
}

namespace {

// Returns the replacement nodes for `n` (itself, or its spliced children).
std::vector<AstNode> strip(const AstNode& n, const std::vector<bool>& keep, std::size_t& pos) {
  std::vector<AstNode> kids;
  for (const auto& c : n.children) {
    auto r = strip(c, keep, pos);
    for (auto& k : r) kids.push_back(std::move(k));
  }
  const bool kept = keep.at(pos++);
  if (!kept) return kids;
  AstNode out = n;
  if (kids.size() != n.children.size()) out.for_parts = ForParts{};
  out.children = std::move(kids);
  return {std::move(out)};
}

}  // namespace

AstNode remove_unmarked(const AstNode& root, const std::vector<bool>& keep) {
  std::size_t pos = 0;
  auto r = strip(root, keep, pos);
  if (r.size() == 1) {
    renumber(r[0]);
    return r[0];
  }
  AstNode wrapper;
  wrapper.kind = root.kind;
  wrapper.text = root.text;
  wrapper.span = root.span;
  wrapper.children = std::move(r);
  renumber(wrapper);
  return wrapper;
}

}  // namespace clone_lattice
