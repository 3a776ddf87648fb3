#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/pipeline.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace clone_lattice;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("clone_lattice_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

PipelineConfig micro_config() {
  PipelineConfig c;
  c.corpus_dir = testsupport::source_path("corpus/micro");
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  PipelineConfig c = micro_config();
  CHECK_NOTHROW(c.validate());
  c.similarity = 0.5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = micro_config();
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("empty directory") {
  auto d = scratch_dir("empty");
  PipelineConfig c;
  c.corpus_dir = d.string();
  CHECK_THROWS_AS(run_pipeline(c), EmptyCorpus);
}

TEST_CASE("broken files are skipped, all broken is an error") {
  auto d = scratch_dir("broken");
  std::ofstream(d / "bad.c") << "void f({";
  PipelineConfig c;
  c.corpus_dir = d.string();
  CHECK_THROWS_AS(run_pipeline(c), EmptyCorpus);
  std::ofstream(d / "good.c") << "void g(int *p, int n) { int i; for (i = 0; i < n; i++) p[i] = 0; }";
  auto r = run_pipeline(c);
  REQUIRE(r.files.size() == 2);
  CHECK(r.files[0].error.has_value());
  CHECK(!r.files[1].error.has_value());
}

TEST_CASE("micro corpus with defaults") {
  auto r = run_pipeline(micro_config());
  CHECK(r.count(PairVerdict::TrueClone) >= 1);
  CHECK(r.fp_remaining() == 0);
  auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["summary"]["fp_remaining"] == 0);
}

TEST_CASE("elimination percentage is null without false positives") {
  auto d = scratch_dir("clean");
  std::ofstream(d / "a.c") << "void g(int *p, int n) { int i; for (i = 0; i < n; i++) p[i] = 0; }";
  PipelineConfig c;
  c.corpus_dir = d.string();
  auto r = run_pipeline(c);
  CHECK(!r.elimination_percentage());
  auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["summary"]["elimination_percentage"].is_null());
}

TEST_CASE("slicing exposes clones that whole functions hide") {
  PipelineConfig c = micro_config();
  c.similarity = 1.0;
  auto sliced = run_pipeline(c);
  c.no_slicing = true;
  auto whole = run_pipeline(c);
  CHECK(sliced.pairs.size() > whole.pairs.size());
}

TEST_CASE("report is deterministic") {
  CHECK(report_json(run_pipeline(micro_config())) == report_json(run_pipeline(micro_config())));
}

TEST_CASE("emit_report to an unwritable path") {
  auto r = run_pipeline(micro_config());
  CHECK_THROWS_AS(emit_report(r, "/nonexistent/dir/report.json"), IoError);
}
