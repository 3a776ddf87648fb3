#include "clone_lattice/feedback.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "clone_lattice/errors.hpp"

namespace clone_lattice {

std::string_view verdict_name(PairVerdict v) {
  switch (v) {
    case PairVerdict::TrueClone:
      return "true-clone";
    case PairVerdict::FalsePositive:
      return "false-positive";
    case PairVerdict::Skipped:
      return "skipped";
  }
  return "?";
}

VerifyResult verify_constraints(const ConstraintSet& a, const ConstraintSet& b, const EquivalenceOptions& opts) {
  try {
    const VariableMatching m = match_variables(a, b);
    if (check_equivalence(a, b, m, opts) == Verdict::Equivalent) return {PairVerdict::TrueClone, ""};
    return {PairVerdict::FalsePositive, "constraint sets differ"};
  } catch (const NoMatching& e) {
    return {PairVerdict::FalsePositive, std::string("no variable matching: ") + e.what()};
  } catch (const DomainTooLarge& e) {
    return {PairVerdict::Skipped, e.what()};
  }
}

VerifyResult verify_pair(const PointerSlice& a, const PointerSlice& b, const VerifyOptions& opts) {
  try {
    return verify_constraints(symbolic_execute(a, opts.symbolic), symbolic_execute(b, opts.symbolic),
                              opts.equivalence);
  } catch (const UnsupportedConstruct& e) {
    return {PairVerdict::Skipped, e.what()};
  }
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const CloneCluster& cluster,
                                                              const std::vector<WeightedVector>& vectors,
                                                              std::size_t k, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = cluster.members.size();
  if (n < 2) return out;
  k = std::clamp<std::size_t>(k, 1, n / 2);

  std::vector<std::size_t> order = cluster.members;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t lo = c * n / k, hi = (c + 1) * n / k;
    std::vector<std::size_t> chunk(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                   order.begin() + static_cast<std::ptrdiff_t>(hi));
    std::sort(chunk.begin(), chunk.end());
    std::size_t medoid = chunk[0];
    double best = -1.0;
    for (auto x : chunk) {
      double total = 0.0;
      for (auto y : chunk) total += euclidean_distance(vectors[x], vectors[y]);
      if (best < 0.0 || total < best) {
        best = total;
        medoid = x;
      }
    }
    std::size_t far = medoid;
    double far_d = -1.0;
    for (auto y : chunk) {
      if (y == medoid) continue;
      const double d = euclidean_distance(vectors[medoid], vectors[y]);
      if (d > far_d) {
        far_d = d;
        far = y;
      }
    }
    std::pair<std::size_t, std::size_t> p{std::min(medoid, far), std::max(medoid, far)};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

FeedbackResult apply_feedback(const WeightedVector& vi, const WeightedVector& vj, const AstNode& ti,
                              const AstNode& tj, PairVerdict verdict, double s, const FeedbackOptions& opts) {
  FeedbackResult r{vi, vj, std::nullopt, std::nullopt, {}, 1.0};
  if (verdict == PairVerdict::TrueClone) {
    const auto a = postorder_kinds(ti);
    const auto b = postorder_kinds(tj);
    const LcsResult common = lcs(a, b);
    r.residual_a = remove_unmarked(ti, common.in_a);
    r.residual_b = remove_unmarked(tj, common.in_b);
    FeatureVector fa = vectorize(*r.residual_a);
    FeatureVector fb = vectorize(*r.residual_b);
    fa.slice_ref = vi.base.slice_ref;
    fa.token_count = vi.base.token_count;
    fb.slice_ref = vj.base.slice_ref;
    fb.token_count = vj.base.token_count;
    r.a = make_weighted(std::move(fa));
    r.b = make_weighted(std::move(fb));
    r.a.provenance = vi.provenance;
    r.b.provenance = vj.provenance;
    return r;
  }
  if (verdict != PairVerdict::FalsePositive) return r;

  const auto& ci = vi.base.counts;
  const auto& cj = vj.base.counts;
  if (ci.size() != cj.size()) throw DimensionMismatch("feature vectors differ in length");
  for (std::size_t t = 0; t < ci.size(); ++t) {
    if (ci[t] != cj[t]) r.touched_dims.push_back(t);
  }
  if (r.touched_dims.empty()) throw NonSeparable("identical feature vectors cannot be separated");

  const double threshold = cluster_threshold(s, vi.base, vj.base);
  for (double delta = opts.delta_init; delta <= opts.delta_max; delta *= 2.0) {
    r.a = vi;
    r.b = vj;
    for (auto t : r.touched_dims) {
      const double common = static_cast<double>(std::min(ci[t], cj[t]));
      r.a.weighted[t] = common + (static_cast<double>(ci[t]) - common) * delta;
      r.b.weighted[t] = common + (static_cast<double>(cj[t]) - common) * delta;
    }
    if (euclidean_distance(r.a, r.b) > threshold) {
      r.delta = delta;
      return r;
    }
  }
  throw NonSeparable("delta up to " + std::to_string(opts.delta_max) + " cannot separate the pair");
}

namespace {

std::vector<WeightedVector> reweighted(const std::vector<WeightedVector>& vectors, const std::vector<double>& factor) {
  std::vector<WeightedVector> out = vectors;
  for (auto& v : out) {
    for (std::size_t t = 0; t < v.weighted.size(); ++t) {
      v.weighted[t] = static_cast<double>(v.base.counts[t]) * factor[t];
    }
  }
  return out;
}

}  // namespace

ConvergenceResult run_until_convergence(const std::vector<CorpusItem>& corpus, const LoopOptions& opts) {
  if (opts.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (opts.similarity < 0.70 || opts.similarity > 1.0) throw std::invalid_argument("similarity must lie in [0.70, 1.00]");

  ConvergenceResult res;
  std::vector<WeightedVector> vectors;
  std::vector<AstNode> trees;
  for (const auto& item : corpus) {
    vectors.push_back(item.vector);
    trees.push_back(item.slice.slice_tree.root);
  }
  const std::size_t dims = vectors.empty() ? kNodeKindCount : vectors[0].weighted.size();
  res.dimension_factors.assign(dims, 1.0);
  std::vector<std::optional<ConstraintSet>> constraints(corpus.size());
  std::vector<std::string> constraint_errors(corpus.size());
  std::vector<bool> rewritten(corpus.size(), false);
  std::set<std::pair<std::size_t, std::size_t>> exempt;

  auto constraint_of = [&](std::size_t i) -> const std::optional<ConstraintSet>& {
    if (!constraints[i] && constraint_errors[i].empty()) {
      try {
        constraints[i] = symbolic_execute(corpus[i].slice, opts.verify.symbolic);
      } catch (const UnsupportedConstruct& e) {
        constraint_errors[i] = e.what();
      }
    }
    return constraints[i];
  };

  for (int it = 1; it <= opts.max_iterations; ++it) {
    const auto clusters = lsh_cluster(vectors, opts.similarity, opts.min_tokens);
    if (it == 1) res.initial_clusters = clusters;
    ConvergenceEntry entry;
    entry.iteration = it;
    entry.clusters = clusters.size();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& c : clusters) {
      for (const auto& p : sample_pairs(c, vectors, opts.sample_k, opts.seed + static_cast<std::uint64_t>(it))) {
        pairs.push_back(p);
      }
    }

    std::size_t new_tp = 0, new_fp = 0;
    for (const auto& [a, b] : pairs) {
      if (exempt.count({a, b})) continue;
      ++entry.pairs_verified;
      const bool fresh = !res.verdicts.count({a, b});
      if (fresh) {
        const auto& ca = constraint_of(a);
        const auto& cb = constraint_of(b);
        VerifyResult v;
        if (!ca || !cb) {
          v = {PairVerdict::Skipped, ca ? constraint_errors[b] : constraint_errors[a]};
        } else {
          v = verify_constraints(*ca, *cb, opts.verify.equivalence);
        }
        res.verdicts[{a, b}] = v;
      }
      const VerifyResult& v = res.verdicts[{a, b}];
      FeedbackRecord rec;
      rec.pair = {corpus[a].slice.id(), corpus[b].slice.id()};
      rec.verdict = v.verdict;
      rec.iteration = it;

      if (v.verdict == PairVerdict::Skipped) {
        if (fresh) ++entry.skipped;
        continue;
      }
      if (v.verdict == PairVerdict::TrueClone) {
        if (!fresh) continue;
        ++new_tp;
        ++entry.tps_confirmed;
        // a vector already pushed away from a false positive keeps its base
        if (!rewritten[a] && !rewritten[b] && vectors[a].provenance.empty() && vectors[b].provenance.empty()) {
          auto fr = apply_feedback(vectors[a], vectors[b], trees[a], trees[b], PairVerdict::TrueClone,
                                   opts.similarity, opts.feedback);
          trees[a] = std::move(*fr.residual_a);
          trees[b] = std::move(*fr.residual_b);
          vectors[a].base.counts = fr.a.base.counts;
          vectors[a].base.size = fr.a.base.size;
          vectors[b].base.counts = fr.b.base.counts;
          vectors[b].base.size = fr.b.base.size;
          rewritten[a] = rewritten[b] = true;
        }
        rec.delta = 1.0;
        res.records.push_back(std::move(rec));
        continue;
      }

      if (!fresh) continue;
      ++new_fp;
      try {
        auto fr = apply_feedback(vectors[a], vectors[b], trees[a], trees[b], PairVerdict::FalsePositive,
                                 opts.similarity, opts.feedback);
        for (auto t : fr.touched_dims) res.dimension_factors[t] = std::max(res.dimension_factors[t], fr.delta);
        rec.touched_dims = fr.touched_dims;
        rec.delta = fr.delta;
        AppliedFeedback applied{"", it, fr.delta, fr.touched_dims};
        applied.partner = rec.pair.second;
        vectors[a].provenance.push_back(applied);
        applied.partner = rec.pair.first;
        vectors[b].provenance.push_back(applied);
        ++entry.fps_eliminated;
        res.records.push_back(std::move(rec));
      } catch (const NonSeparable&) {
        exempt.insert({a, b});
        res.exempt.emplace_back(a, b);
        ++entry.non_separable;
      }
    }
    vectors = reweighted(vectors, res.dimension_factors);
    res.log.entries.push_back(entry);
    if (new_fp == 0 && new_tp == 0) {
      res.converged = true;
      break;
    }
  }
  res.clusters = lsh_cluster(vectors, opts.similarity, opts.min_tokens);
  res.vectors = std::move(vectors);
  return res;
}

}  // namespace clone_lattice
