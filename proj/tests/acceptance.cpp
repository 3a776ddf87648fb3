// Acceptance checks 1-7. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/pipeline.hpp"
#include "lsh_oracle.hpp"
#include "random_constraints.hpp"
#include "support.hpp"

using namespace clone_lattice;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

using Check = std::function<void(Outcome&)>;

void worked_example(Outcome& o) {
  // oracle: plain arithmetic on the two vectors
  const std::vector<double> a{7, 2, 2, 2, 0, 1, 1, 1, 1}, b{8, 1, 1, 2, 1, 1, 1, 1, 1};
  double d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  const double oracle_d = std::sqrt(d2);
  const double oracle_t = std::sqrt(2.0 * (1.0 - 0.75) * 17.0);
  std::vector<double> oa = a, ob = b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double common = std::min(a[i], b[i]);
    oa[i] = common + (a[i] - common) * 2.0;
    ob[i] = common + (b[i] - common) * 2.0;
  }
  double e2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e2 += (oa[i] - ob[i]) * (oa[i] - ob[i]);
  const double oracle_after = std::sqrt(e2);

  auto va = lshoracle::vec({7, 2, 2, 2, 0, 1, 1, 1, 1});
  auto vb = lshoracle::vec({8, 1, 1, 2, 1, 1, 1, 1, 1});
  const double d = euclidean_distance(va, vb);
  const double t = cluster_threshold(0.75, va.base, vb.base);
  AstNode none;
  auto fb = apply_feedback(va, vb, none, none, PairVerdict::FalsePositive, 0.75);
  const double after = euclidean_distance(fb.a, fb.b);

  o.require(std::abs(d - oracle_d) < 1e-9 && std::abs(d - 2.0) < 1e-9, "distance 2");
  o.require(std::abs(t - oracle_t) < 1e-9 && std::abs(t - 2.9155) < 1e-4, "threshold");
  o.require(d <= t, "clustered");
  o.require(fb.delta == 2.0, "delta 2");
  o.require(std::abs(after - oracle_after) < 1e-9 && std::abs(after - 4.0) < 1e-9, "distance 4");
  o.require(after > t, "eliminated");
  o.detail << "d=" << d << " T=" << t << " after=" << after;
}

void fixture_verdicts(Outcome& o) {
  using testsupport::fixtures;
  using testsupport::function_named;
  using testsupport::slice_of;
  using V = std::vector<std::string>;
  auto taint = [](const char* fn, const char* p) { return testsupport::sorted_vars(testsupport::taint_of(function_named(fixtures(), fn), p)); };
  o.require(taint("mgau_eval", "active") == V{"j"}, "taint active");
  o.require(taint("lextree_hmm_histbin", "list") == V{"i", "lextree->n_active"}, "taint list");
  o.require(taint("fe_spec_magnitude", "IN") == V{"data_len", "j", "wrap"}, "taint IN loop1");
  o.require(taint("fe_spec_magnitude_fft", "IN") == V{"fftsize", "j"}, "taint IN loop2");

  auto verdict = [&](const char* f1, const char* p1, const char* f2, const char* p2) {
    return verify_pair(slice_of(function_named(fixtures(), f1), p1), slice_of(function_named(fixtures(), f2), p2))
        .verdict;
  };
  const auto tp = verdict("dict2pid_dump", "mdef->sseq", "gc_compute_closest_cw", "gs->codeword");
  const auto fp1 = verdict("mgau_eval", "active", "lextree_hmm_histbin", "list");
  const auto fp2 = verdict("fe_spec_magnitude", "IN", "fe_spec_magnitude_fft", "IN");
  o.require(tp == PairVerdict::TrueClone, "dict2pid/gc");
  o.require(fp1 == PairVerdict::FalsePositive, "mgau/lextree");
  o.require(fp2 == PairVerdict::FalsePositive, "fe loops");
  o.detail << verdict_name(tp) << ", " << verdict_name(fp1) << ", " << verdict_name(fp2) << "; taint sets match";
}

void slicing_uplift(Outcome& o) {
  PipelineConfig c;
  c.corpus_dir = testsupport::source_path("corpus/micro");
  c.similarity = 1.0;
  auto sliced = run_pipeline(c);
  c.no_slicing = true;
  auto whole = run_pipeline(c);
  std::size_t functions = sliced.functions.size();
  std::size_t tp = 0;
  for (const auto& p : sliced.pairs) {
    tp += verify_pair(sliced.units[p.a].slice, sliced.units[p.b].slice).verdict == PairVerdict::TrueClone;
  }
  o.require(functions >= 10, "at least 10 functions");
  o.require(sliced.pairs.size() > whole.pairs.size(), "more pairs with slicing");
  o.require(tp == sliced.pairs.size(), "all pairs true clones");
  o.detail << sliced.pairs.size() << " sliced pairs vs " << whole.pairs.size() << " whole-function pairs, " << tp
           << " verified true clones, " << functions << " functions";
}

void fp_convergence(Outcome& o) {
  PipelineConfig c;
  c.corpus_dir = testsupport::source_path("corpus/fp_seeded");
  c.similarity = 0.70;
  auto r = run_pipeline(c);
  const std::size_t fps = r.count(PairVerdict::FalsePositive);
  const std::size_t excluded = r.loop.exempt.size() + r.count(PairVerdict::Skipped);
  const std::size_t iterations = r.loop.log.entries.size();
  o.require(fps >= 5, "at least 5 false positives");
  o.require(r.fp_remaining() == 0, "none remaining");
  o.require(excluded <= 1, "at most one non-separable or skipped");
  o.require(r.loop.converged && iterations <= 20, "converged within 20 iterations");
  o.detail << fps << " false positives, " << r.fp_remaining() << " remaining, " << excluded << " excluded, "
           << iterations << " iterations";
}

void constraint_oracle(Outcome& o) {
  randcs::Generator gen(31337);
  EquivalenceOptions opts;
  opts.domain_radius = 8;
  const auto m = randcs::identity_matching();
  int agree = 0, fast_hits = 0, equivalent = 0;
  const int pairs = 1200;
  for (int i = 0; i < pairs; ++i) {
    auto f = gen.formula();
    auto g = gen.pick(0, 1) ? gen.equivalent_variant(f) : gen.mutated(f);
    const bool truth = randcs::equivalent(f, g, opts.domain_radius);
    auto a = randcs::build(f), b = randcs::build(g);
    const bool fast = canonically_equal(a, b, m);
    const bool full = check_equivalence(a, b, m, opts) == Verdict::Equivalent;
    fast_hits += fast;
    equivalent += truth;
    agree += (full == truth) && (!fast || truth);
  }
  int renamed_ok = 0;
  const int renamings = 250;
  for (int i = 0; i < renamings; ++i) {
    auto a = randcs::build(gen.formula());
    std::map<std::string, std::string> names{{"x", "k" + std::to_string(i)},
                                             {"y", "lim" + std::to_string(i)},
                                             {"length(p)", "length(buf)"},
                                             {"length(*p)", "length(*buf)"}};
    auto b = rename(a, names, "buf");
    renamed_ok += check_equivalence(a, b, match_variables(a, b), opts) == Verdict::Equivalent;
  }
  o.require(agree == pairs, "fast path and enumeration agree with the oracle");
  o.require(renamed_ok == renamings, "renaming invariance");
  o.detail << agree << "/" << pairs << " pairs agree (" << equivalent << " equivalent, " << fast_hits
           << " by canonical form), " << renamed_ok << "/" << renamings << " renamings equivalent";
}

void lsh_exactness(Outcome& o) {
  std::mt19937_64 rng(8675309);
  int same = 0;
  const int corpora = 60;
  for (int k = 0; k < corpora; ++k) {
    const std::size_t n = 2 + rng() % 199;
    std::vector<WeightedVector> v;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> head(kNodeKindCount);
      const std::int64_t scale = 1 + static_cast<std::int64_t>(rng() % 6);
      for (auto& x : head) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(scale + 1));
      v.push_back(lshoracle::vec(head, 5 + rng() % 40));
    }
    const double s = 0.70 + 0.01 * static_cast<double>(rng() % 31);
    std::vector<std::vector<std::size_t>> got;
    for (const auto& c : lsh_cluster(v, s, 20)) got.push_back(c.members);
    same += got == lshoracle::brute_force(v, s, 20);
  }
  std::uniform_int_distribution<int> d(-30, 30);
  int holds = 0;
  const int pairs = 12000;
  for (int i = 0; i < pairs; ++i) {
    std::vector<double> a(kNodeKindCount), b(kNodeKindCount);
    for (std::size_t t = 0; t < a.size(); ++t) {
      a[t] = d(rng);
      b[t] = d(rng);
    }
    holds += euclidean_distance(a, b) >= std::sqrt(hamming_distance(a, b));
  }
  o.require(same == corpora, "lsh equals brute force");
  o.require(holds == pairs, "E >= sqrt(H)");
  o.detail << same << "/" << corpora << " corpora match brute force, " << holds << "/" << pairs << " pairs with E >= sqrt(H)";
}

void determinism(Outcome& o) {
  PipelineConfig c;
  c.corpus_dir = testsupport::source_path("corpus/micro");
  const std::string a = report_json(run_pipeline(c));
  const std::string b = report_json(run_pipeline(c));
  o.require(a == b, "byte-identical reports");
  o.detail << a.size() << " bytes, identical";
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const std::vector<std::pair<std::string, Check>> checks{
      {"worked example distances and delta=2 elimination", worked_example},
      {"fixture taint sets and pair verdicts", fixture_verdicts},
      {"slicing uplift on the micro corpus at S=1.0", slicing_uplift},
      {"false-positive elimination converges", fp_convergence},
      {"constraint fast path vs enumeration, renaming invariance", constraint_oracle},
      {"LSH equals brute force, E >= sqrt(H)", lsh_exactness},
      {"analyze reports are byte-identical", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      checks[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << checks[i].first << " ("
              << o.detail.str() << ") [" << ms << " ms]\n";
  }
  return failed == 0 ? 0 : 1;
}
