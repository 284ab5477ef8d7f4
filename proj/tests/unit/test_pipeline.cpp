#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "burstlab/export.hpp"
#include "burstlab/pipeline.hpp"
#include "doctest.h"

using namespace burstlab;
namespace fs = std::filesystem;

namespace {

const fs::path kData{BURSTLAB_TEST_DATA};
const fs::path kFixture = kData / "synthetic_10k.txt";
const fs::path kGolden = kData / "golden";
const char* kOutputFiles[] = {"bins.csv", "lv_hist.csv", "zipf.csv", "zscores.csv", "correlations.csv", "summary.json"};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("burstlab_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

RunConfig fixture_config(const fs::path& out) {
  RunConfig c;
  c.input = kFixture;
  c.output_dir = out;
  return c;
}

}  // namespace

TEST_CASE("analysis covers every family and both null roles") {
  const auto a = run_pipeline(fixture_config(scratch("families")));
  CHECK(a.families.size() == 8);
  CHECK(a.null_families.size() == 2);
  for (const auto& f : a.families) {
    CHECK(f.n_trains == f.records.size());
    std::size_t members = 0;
    for (const auto& s : f.summaries) members += s.member_count;
    CHECK(members == f.records.size());
  }
  CHECK_FALSE(a.zscores.empty());
  CHECK_FALSE(a.correlations.empty());
  // Spike counts agree between a family and its null surrogate.
  const auto* real = a.family(Role::Passive, Channel::All);
  REQUIRE(real != nullptr);
  CHECK(a.null_families[1].n_trains == real->n_trains);
}

TEST_CASE("fixture: passive trains follow their generating Gamma shape") {
  // The fixture gives passive user 100000 + k Gamma(shape) gaps with shape
  // cycling {0.3, 1, 4} by k mod 3. Reference values are E[L_V] = 3 / (2
  // shape + 1); integer-second rounding and dedup pull the bursty group
  // down, so that group is only checked for ordering.
  const auto loaded = load_log_file(kFixture);
  const auto records = measure_all(build_trains(loaded.log, Role::Passive, Channel::All));
  std::map<int, std::pair<double, int>> by_shape;
  for (const auto& r : records) {
    const auto k = static_cast<int>(r.key.user) - 100000;
    if (k < 0 || k >= 300 || r.frequency < 100 || !r.lv.ok()) continue;
    auto& [sum, n] = by_shape[k % 3];
    sum += r.lv.value;
    ++n;
  }
  auto mean = [&](int m) { return by_shape[m].first / by_shape[m].second; };
  CHECK(std::abs(mean(1) - 1.0) <= 0.1);
  CHECK(std::abs(mean(2) - 1.0 / 3.0) <= 0.1);
  CHECK(mean(0) > mean(1) + 0.3);
}

TEST_CASE("outputs match the golden files") {
  const auto out = scratch("golden");
  run_pipeline(fixture_config(out));
  if (std::getenv("BURSTLAB_UPDATE_GOLDEN")) {
    fs::create_directories(kGolden);
    for (auto f : kOutputFiles) fs::copy_file(out / f, kGolden / f, fs::copy_options::overwrite_existing);
  }
  for (auto f : kOutputFiles) {
    CAPTURE(f);
    REQUIRE(fs::exists(kGolden / f));
    CHECK(slurp(out / f) == slurp(kGolden / f));
  }
}

TEST_CASE("re-running from manifest.json reproduces every byte") {
  const auto first = scratch("manifest_a");
  const auto second = scratch("manifest_b");
  RunConfig c = fixture_config(first);
  c.bins = BinScheme::parse("log:3:0.5");
  c.null_seeds = {3, 9};
  c.z_denominator = ZDenominator::Frequency;
  run_pipeline(c);

  RunConfig again = load_manifest(first / "manifest.json");
  CHECK(manifest_json(again) == manifest_json(c));
  again.output_dir = second;
  run_pipeline(again);
  for (auto f : kOutputFiles) {
    CAPTURE(f);
    CHECK(slurp(first / f) == slurp(second / f));
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto loaded = load_log_file(kFixture);
  RunConfig c;
  c.null_seeds = {1, 2, 3};
  ::setenv("BURSTLAB_THREADS", "1", 1);
  CHECK(thread_budget() == 1);
  const auto a = analyze(loaded.log, loaded.summary, c);
  ::setenv("BURSTLAB_THREADS", "6", 1);
  CHECK(thread_budget() == 6);
  const auto b = analyze(loaded.log, loaded.summary, c);
  ::unsetenv("BURSTLAB_THREADS");
  std::ostringstream sa, sb;
  write_csv(bins_table(a, true), sa);
  write_csv(correlations_table(a), sa);
  write_csv(zscores_table(a), sa);
  write_csv(bins_table(b, true), sb);
  write_csv(correlations_table(b), sb);
  write_csv(zscores_table(b), sb);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("manifest parsing rejects bad values") {
  RunConfig c;
  std::string good = manifest_json(c);
  CHECK_NOTHROW(parse_manifest(good));
  CHECK_THROWS_AS(parse_manifest("{"), std::invalid_argument);
  std::string bad = good;
  bad.replace(bad.find("\"drop\""), 6, "\"maybe\"");
  CHECK_THROWS_AS(parse_manifest(bad), std::invalid_argument);
}

TEST_CASE("fixture pipeline finishes well within 5 s") {
  const auto start = std::chrono::steady_clock::now();
  run_pipeline(fixture_config(scratch("timing")));
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  CHECK(took.count() < 5.0);
}

TEST_CASE("plot tables") {
  const auto loaded = load_log_file(kFixture);
  RunConfig c;
  const auto a = analyze(loaded.log, loaded.summary, c);
  const auto tables = plot_tables(a, c);
  std::vector<std::string> names;
  for (const auto& t : tables) names.push_back(t.name);
  CHECK(names == std::vector<std::string>{"zipf", "lv_pdf", "mean_lv", "zscores", "corr_cross", "corr_same"});
  for (const auto& t : tables) {
    for (const auto& row : t.rows) CHECK(row.size() == t.columns.size());
  }
  std::ostringstream gp;
  export_tables(tables, ExportFormat::Gnuplot, gp);
  CHECK(gp.str().find("# mean_lv\n# role channel class_index log10_mean_f n_included mu_lv sigma_lv\n") != std::string::npos);
  std::ostringstream js;
  export_tables(tables, ExportFormat::Json, js);
  CHECK(js.str().find("\"name\": \"corr_same\"") != std::string::npos);
}
