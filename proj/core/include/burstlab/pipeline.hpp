#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "burstlab/format.hpp"
#include "burstlab/ingest.hpp"
#include "burstlab/localvar.hpp"
#include "burstlab/nullmodel.hpp"
#include "burstlab/stats.hpp"
#include "burstlab/trains.hpp"

namespace burstlab {

// Effective configuration of one analysis run. Written next to the outputs as
// manifest.json; feeding that file back reproduces the outputs byte for byte.
struct RunConfig {
  std::filesystem::path input;
  IngestOptions ingest{};
  std::vector<Role> roles{kRoles.begin(), kRoles.end()};
  std::vector<Channel> channels{kAnalysisChannels.begin(), kAnalysisChannels.end()};
  BinScheme bins = BinScheme::logarithmic();
  double lv_hist_width = 0.1;
  FrequencyMode frequency = FrequencyMode::PostDedup;
  // One permutation surrogate (All channel, every selected role) per seed.
  std::vector<std::uint64_t> null_seeds{1};
  NullOptions null{};
  // Denominator used for plot exports; zscores.csv always carries both.
  ZDenominator z_denominator = ZDenominator::UserCount;
  std::filesystem::path output_dir{"burstlab-out"};
};

std::string manifest_json(const RunConfig& config);
// Throws std::invalid_argument on unknown or ill-typed fields.
RunConfig parse_manifest(std::string_view json);
RunConfig load_manifest(const std::filesystem::path& path);

// Everything computed for one (role, channel) train family.
struct FamilyAnalysis {
  Role role = Role::Active;
  Channel channel = Channel::All;
  std::optional<std::uint64_t> null_seed;  // set for permutation surrogates
  std::size_t n_trains = 0;
  std::vector<LvRecord> records;  // sorted by user id
  Binning binning;
  std::vector<BinSummary> summaries;  // one per class, including empty ones

  std::size_t n_included() const;
  const BinSummary* summary(std::size_t class_index) const;
};

struct Analysis {
  LogSummary log_summary;
  std::vector<FamilyAnalysis> families;
  std::vector<FamilyAnalysis> null_families;
  std::vector<ZScoreRecord> zscores;
  std::vector<CorrelationRecord> correlations;

  const FamilyAnalysis* family(Role role, Channel channel) const;
};

// Dedup, frequency, L_V, binning and per-class summaries of one family.
FamilyAnalysis analyze_family(const TrainSet& raw, Role role, Channel channel, const RunConfig& config);

// z-values for every class and both denominators. Needs the All, RT and
// Mention families of `role`; returns nothing if any is missing.
std::vector<ZScoreRecord> zscores_for_role(const Analysis& analysis, Role role);
std::vector<CorrelationRecord> correlations_for_role(const Analysis& analysis, Role role);

// Full analysis of an already loaded log. Families are computed in parallel
// (see thread_budget); results do not depend on the thread count.
Analysis analyze(const EventLog& log, const LogSummary& summary, const RunConfig& config);

// Output tables, in file order.
Table bins_table(const Analysis& analysis, bool null_families = false);
Table lv_hist_table(const Analysis& analysis);
Table zipf_table(const Analysis& analysis);
Table zscores_table(const Analysis& analysis);
Table correlations_table(const Analysis& analysis);
std::string summary_json(const Analysis& analysis);

// Writes bins.csv (real and null rows), lv_hist.csv, zipf.csv, zscores.csv,
// correlations.csv, summary.json and manifest.json into config.output_dir.
void write_outputs(const Analysis& analysis, const RunConfig& config);

// load_log_file + analyze + write_outputs.
Analysis run_pipeline(const RunConfig& config);

// Worker count: BURSTLAB_THREADS if set to a positive integer, else the
// hardware concurrency.
unsigned thread_budget();

std::string log_summary_json(const LogSummary& summary);

}  // namespace burstlab
