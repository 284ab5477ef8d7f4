#include "burstlab/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "burstlab/error.hpp"
#include "json.hpp"

namespace burstlab {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Manifest

namespace {

std::string_view direction_name(Direction d) { return d == Direction::AActive ? "a-active" : "b-active"; }
std::string_view self_name(SelfPolicy p) { return p == SelfPolicy::Drop ? "drop" : "keep"; }
std::string_view frequency_name(FrequencyMode m) { return m == FrequencyMode::PostDedup ? "post-dedup" : "pre-dedup"; }
std::string_view scope_name(ShuffleScope s) { return s == ShuffleScope::View ? "view" : "global"; }
std::string_view counts_name(CountPreservation c) { return c == CountPreservation::Exact ? "exact" : "expected"; }

template <typename T>
T pick(const ordered_json& j, const char* key, std::initializer_list<std::pair<std::string_view, T>> options) {
  const auto s = j.at(key).get<std::string>();
  for (const auto& [name, value] : options) {
    if (s == name) return value;
  }
  throw std::invalid_argument(std::string("manifest: bad value '") + s + "' for " + key);
}

}  // namespace

std::string manifest_json(const RunConfig& c) {
  ordered_json j;
  j["input"] = c.input.string();
  j["window"] = {c.ingest.window.start, c.ingest.window.end};
  j["direction"] = direction_name(c.ingest.direction);
  j["self"] = self_name(c.ingest.self);
  j["strict"] = c.ingest.malformed == MalformedPolicy::Strict;
  j["roles"] = ordered_json::array();
  for (auto r : c.roles) j["roles"].push_back(to_string(r));
  j["channels"] = ordered_json::array();
  for (auto ch : c.channels) j["channels"].push_back(to_string(ch));
  j["bins"] = c.bins.to_string();
  j["lv_hist_width"] = c.lv_hist_width;
  j["frequency"] = frequency_name(c.frequency);
  j["null_seeds"] = c.null_seeds;
  j["null_scope"] = scope_name(c.null.scope);
  j["null_counts"] = counts_name(c.null.counts);
  j["z_denominator"] = to_string(c.z_denominator);
  j["output_dir"] = c.output_dir.string();
  return j.dump(2) + "\n";
}

RunConfig parse_manifest(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
  RunConfig c;
  try {
    c.input = j.at("input").get<std::string>();
    const auto w = j.at("window");
    c.ingest.window = {w.at(0).get<Timestamp>(), w.at(1).get<Timestamp>()};
    c.ingest.direction = pick<Direction>(j, "direction", {{"a-active", Direction::AActive}, {"b-active", Direction::BActive}});
    c.ingest.self = pick<SelfPolicy>(j, "self", {{"drop", SelfPolicy::Drop}, {"keep", SelfPolicy::Keep}});
    c.ingest.malformed = j.at("strict").get<bool>() ? MalformedPolicy::Strict : MalformedPolicy::Skip;
    c.roles.clear();
    for (const auto& r : j.at("roles")) {
      auto role = parse_role(r.get<std::string>());
      if (!role) throw std::invalid_argument("manifest: bad role");
      c.roles.push_back(*role);
    }
    c.channels.clear();
    for (const auto& ch : j.at("channels")) {
      auto channel = parse_channel(ch.get<std::string>());
      if (!channel) throw std::invalid_argument("manifest: bad channel");
      c.channels.push_back(*channel);
    }
    c.bins = BinScheme::parse(j.at("bins").get<std::string>());
    c.lv_hist_width = j.at("lv_hist_width").get<double>();
    histogram_bins(c.lv_hist_width);
    c.frequency = pick<FrequencyMode>(j, "frequency", {{"post-dedup", FrequencyMode::PostDedup}, {"pre-dedup", FrequencyMode::PreDedup}});
    c.null_seeds = j.at("null_seeds").get<std::vector<std::uint64_t>>();
    c.null.scope = pick<ShuffleScope>(j, "null_scope", {{"view", ShuffleScope::View}, {"global", ShuffleScope::Global}});
    c.null.counts = pick<CountPreservation>(j, "null_counts", {{"exact", CountPreservation::Exact}, {"expected", CountPreservation::Expected}});
    auto z = parse_z_denominator(j.at("z_denominator").get<std::string>());
    if (!z) throw std::invalid_argument("manifest: bad z_denominator");
    c.z_denominator = *z;
    c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
  return c;
}

RunConfig load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

// ---------------------------------------------------------------------------
// Analysis

unsigned thread_budget() {
  if (const char* env = std::getenv("BURSTLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void run_parallel(std::vector<std::function<void()>>& tasks) {
  const unsigned workers = std::min<unsigned>(thread_budget(), static_cast<unsigned>(tasks.size()));
  if (workers <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
          try {
            tasks[i]();
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::size_t FamilyAnalysis::n_included() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const LvRecord& r) { return r.lv.ok(); }));
}

const BinSummary* FamilyAnalysis::summary(std::size_t class_index) const {
  return class_index < summaries.size() ? &summaries[class_index] : nullptr;
}

const FamilyAnalysis* Analysis::family(Role role, Channel channel) const {
  for (const auto& f : families) {
    if (f.role == role && f.channel == channel) return &f;
  }
  return nullptr;
}

FamilyAnalysis analyze_family(const TrainSet& raw, Role role, Channel channel, const RunConfig& config) {
  FamilyAnalysis fa;
  fa.role = role;
  fa.channel = channel;
  fa.n_trains = raw.size();
  fa.records = measure_all(raw, config.frequency);
  if (fa.records.empty()) return fa;
  fa.binning = bin_by_frequency(fa.records, config.bins);
  fa.summaries.reserve(fa.binning.classes.size());
  for (const auto& cls : fa.binning.classes) {
    const auto members = class_members(fa.records, cls);
    fa.summaries.push_back(bin_summary(members, cls, role, channel, config.lv_hist_width));
  }
  return fa;
}

namespace {

// Summary of `family` for a class, or an empty stand-in carrying the bounds
// of `like` when the family has no such class.
BinSummary summary_or_empty(const FamilyAnalysis& family, std::size_t idx, const BinSummary& like) {
  if (const auto* s = family.summary(idx)) return *s;
  BinSummary empty;
  empty.class_index = idx;
  empty.lo = like.lo;
  empty.hi = like.hi;
  empty.mean_log10_f = std::numeric_limits<double>::quiet_NaN();
  empty.role = family.role;
  empty.channel = family.channel;
  return empty;
}

const BinSummary* any_summary(std::initializer_list<const FamilyAnalysis*> fams, std::size_t idx) {
  for (const auto* f : fams) {
    if (const auto* s = f->summary(idx)) return s;
  }
  return nullptr;
}

std::size_t class_span(std::initializer_list<const FamilyAnalysis*> fams) {
  std::size_t n = 0;
  for (const auto* f : fams) n = std::max(n, f->summaries.size());
  return n;
}

std::vector<LvRecord> members_of(const FamilyAnalysis& f, std::size_t idx) {
  if (idx >= f.binning.classes.size()) return {};
  return class_members(f.records, f.binning.classes[idx]);
}

}  // namespace

std::vector<ZScoreRecord> zscores_for_role(const Analysis& analysis, Role role) {
  const auto* full = analysis.family(role, Channel::All);
  const auto* rt = analysis.family(role, Channel::Retweet);
  const auto* at = analysis.family(role, Channel::Mention);
  std::vector<ZScoreRecord> out;
  if (!full || !rt || !at) return out;

  const std::size_t n = class_span({full, rt, at});
  for (std::size_t idx = 0; idx < n; ++idx) {
    const BinSummary* like = any_summary({full, rt, at}, idx);
    const auto s_full = summary_or_empty(*full, idx, *like);
    const auto s_rt = summary_or_empty(*rt, idx, *like);
    const auto s_at = summary_or_empty(*at, idx, *like);
    if (s_full.member_count == 0 && s_rt.member_count == 0 && s_at.member_count == 0) continue;
    for (auto denom : {ZDenominator::UserCount, ZDenominator::Frequency}) {
      out.push_back(z_channel_vs_full(s_rt, s_full, ZComparison::FullVsRT, denom));
      out.push_back(z_channel_vs_full(s_at, s_full, ZComparison::FullVsMention, denom));
      out.push_back(z_cross_channel(s_at, s_rt, denom));
    }
  }
  return out;
}

std::vector<CorrelationRecord> correlations_for_role(const Analysis& analysis, Role role) {
  const auto* full = analysis.family(role, Channel::All);
  const auto* rt = analysis.family(role, Channel::Retweet);
  const auto* at = analysis.family(role, Channel::Mention);
  std::vector<CorrelationRecord> out;
  if (!full || !rt || !at) return out;

  struct PairDef {
    ChannelPair pair;
    const FamilyAnalysis* k;
    const FamilyAnalysis* k2;
  };
  const PairDef pairs[] = {{ChannelPair::FullRT, full, rt},
                           {ChannelPair::FullMention, full, at},
                           {ChannelPair::RTMention, rt, at}};

  const std::size_t n = class_span({full, rt, at});
  for (std::size_t idx = 0; idx < n; ++idx) {
    const BinSummary* like = any_summary({full, rt, at}, idx);
    for (const auto& p : pairs) {
      const auto sk = summary_or_empty(*p.k, idx, *like);
      const auto sk2 = summary_or_empty(*p.k2, idx, *like);
      if (sk.member_count == 0 && sk2.member_count == 0) continue;
      const auto mk = members_of(*p.k, idx);
      const auto mk2 = members_of(*p.k2, idx);
      for (auto mode : {PairingMode::CrossUser, PairingMode::SameUser}) {
        CorrelationRecord rec =
            mode == PairingMode::CrossUser ? pearson_cross_user(mk, mk2) : pearson_same_user(mk, mk2);
        rec.class_index = idx;
        rec.lo = like->lo;
        rec.hi = like->hi;
        rec.mean_log10_f_k = sk.mean_log10_f;
        rec.mean_log10_f_k2 = sk2.mean_log10_f;
        rec.role = role;
        rec.pair = p.pair;
        out.push_back(rec);
      }
    }
  }
  return out;
}

Analysis analyze(const EventLog& log, const LogSummary& summary, const RunConfig& config) {
  histogram_bins(config.lv_hist_width);
  Analysis a;
  a.log_summary = summary;

  for (auto role : config.roles) {
    for (auto channel : config.channels) {
      FamilyAnalysis fa;
      fa.role = role;
      fa.channel = channel;
      a.families.push_back(std::move(fa));
    }
  }
  for (auto seed : config.null_seeds) {
    for (auto role : config.roles) {
      FamilyAnalysis fa;
      fa.role = role;
      fa.channel = Channel::All;
      fa.null_seed = seed;
      a.null_families.push_back(std::move(fa));
    }
  }

  std::vector<std::function<void()>> tasks;
  for (auto& fa : a.families) {
    tasks.emplace_back([&log, &config, &fa] {
      const TrainSet raw = build_trains(log, fa.role, fa.channel);
      fa = analyze_family(raw, fa.role, fa.channel, config);
    });
  }
  for (auto& fa : a.null_families) {
    tasks.emplace_back([&log, &config, &fa] {
      const auto seed = *fa.null_seed;
      const TrainSet raw = permute_null_raw(log, fa.role, fa.channel, Seed{seed}, config.null);
      fa = analyze_family(raw, fa.role, fa.channel, config);
      fa.null_seed = seed;
    });
  }
  run_parallel(tasks);

  for (auto role : config.roles) {
    auto z = zscores_for_role(a, role);
    a.zscores.insert(a.zscores.end(), z.begin(), z.end());
    auto c = correlations_for_role(a, role);
    a.correlations.insert(a.correlations.end(), c.begin(), c.end());
  }
  return a;
}

// ---------------------------------------------------------------------------
// Output tables

namespace {

Cell str(std::string_view s) { return Cell{std::string(s)}; }

std::string source_of(const FamilyAnalysis& f) {
  return f.null_seed ? "null-" + std::to_string(*f.null_seed) : "real";
}

Cell finite_or_na(double v) { return std::isnan(v) ? Cell{} : Cell{v}; }

}  // namespace

Table bins_table(const Analysis& a, bool null_families) {
  Table t{"bins",
          {"source", "role", "channel", "class_index", "f_lo", "f_hi", "log10_mean_f", "member_count",
           "n_included", "excluded_count", "mu_lv", "sigma_lv", "degenerate"},
          {}};
  const auto& fams = null_families ? a.null_families : a.families;
  for (const auto& f : fams) {
    for (const auto& s : f.summaries) {
      t.rows.push_back({str(source_of(f)), str(to_string(f.role)), str(to_string(f.channel)), cell(s.class_index),
                        Cell{s.lo}, Cell{s.hi}, finite_or_na(s.mean_log10_f), cell(s.member_count),
                        cell(s.n_included), cell(s.excluded_count), s.defined() ? Cell{s.mu} : Cell{},
                        s.defined() ? Cell{s.sigma} : Cell{}, Cell{std::int64_t{s.degenerate ? 1 : 0}}});
    }
  }
  return t;
}

Table lv_hist_table(const Analysis& a) {
  Table t{"lv_hist",
          {"source", "role", "channel", "class_index", "log10_mean_f", "n_included", "lv_lo", "lv_hi",
           "probability", "density"},
          {}};
  auto emit = [&t](const FamilyAnalysis& f) {
    for (const auto& s : f.summaries) {
      if (!s.defined()) continue;
      for (std::size_t b = 0; b < s.histogram.size(); ++b) {
        const double lo = static_cast<double>(b) * s.hist_width;
        const double hi = std::min(3.0, static_cast<double>(b + 1) * s.hist_width);
        t.rows.push_back({str(source_of(f)), str(to_string(f.role)), str(to_string(f.channel)),
                          cell(s.class_index), finite_or_na(s.mean_log10_f), cell(s.n_included), Cell{lo},
                          Cell{hi}, Cell{s.histogram[b]}, Cell{s.histogram[b] / (hi - lo)}});
      }
    }
  };
  for (const auto& f : a.families) emit(f);
  for (const auto& f : a.null_families) emit(f);
  return t;
}

Table zipf_table(const Analysis& a) {
  Table t{"zipf", {"role", "channel", "rank", "user_id", "frequency"}, {}};
  for (const auto& f : a.families) {
    for (const auto& z : zipf_ranks(f.records, f.role, f.channel)) {
      t.rows.push_back({str(to_string(z.role)), str(to_string(z.channel)), cell(z.rank),
                        Cell{static_cast<std::int64_t>(z.user)}, cell(z.frequency)});
    }
  }
  return t;
}

Table zscores_table(const Analysis& a) {
  Table t{"zscores",
          {"role", "comparison", "denominator", "class_index", "f_lo", "f_hi", "log10_mean_f", "mu_k", "mu_0",
           "sigma_k", "f_k", "z"},
          {}};
  for (const auto& z : a.zscores) {
    t.rows.push_back({str(to_string(z.role)), str(to_string(z.comparison)), str(to_string(z.denominator)),
                      cell(z.class_index), Cell{z.lo}, Cell{z.hi}, finite_or_na(z.mean_log10_f), finite_or_na(z.mu_k),
                      finite_or_na(z.mu_0), finite_or_na(z.sigma_k), finite_or_na(z.f_k), cell(z.z)});
  }
  return t;
}

Table correlations_table(const Analysis& a) {
  Table t{"correlations",
          {"role", "pair", "mode", "class_index", "f_lo", "f_hi", "log10_mean_f_k", "log10_mean_f_k2", "n_pairs",
           "r"},
          {}};
  for (const auto& c : a.correlations) {
    t.rows.push_back({str(to_string(c.role)), str(to_string(c.pair)), str(to_string(c.mode)), cell(c.class_index),
                      Cell{c.lo}, Cell{c.hi}, finite_or_na(c.mean_log10_f_k), finite_or_na(c.mean_log10_f_k2),
                      cell(c.n_pairs), cell(c.r)});
  }
  return t;
}

namespace {

ordered_json log_summary_object(const LogSummary& s) {
  ordered_json j;
  j["total_events"] = s.total_events;
  j["total_users"] = s.total_users;
  ordered_json channels;
  for (auto c : kEventChannels) {
    const auto& cc = s.channel(c);
    channels[std::string(to_string(c))] = {{"events", cc.events}, {"who", cc.distinct_who}, {"whom", cc.distinct_whom}};
  }
  j["channels"] = channels;
  j["lines_read"] = s.lines_read;
  j["skipped"] = {{"malformed", s.skipped_malformed}, {"self", s.skipped_self},
                  {"out_of_window", s.skipped_out_of_window}};
  j["warnings"] = s.warnings;
  return j;
}

ordered_json family_object(const FamilyAnalysis& f) {
  const auto included = f.n_included();
  ordered_json j;
  if (f.null_seed) j["seed"] = *f.null_seed;
  j["role"] = to_string(f.role);
  j["channel"] = to_string(f.channel);
  j["n_trains"] = f.n_trains;
  j["n_lv"] = included;
  j["n_excluded"] = f.records.size() - included;
  return j;
}

}  // namespace

std::string log_summary_json(const LogSummary& summary) { return log_summary_object(summary).dump(2) + "\n"; }

std::string summary_json(const Analysis& a) {
  ordered_json j;
  j["log"] = log_summary_object(a.log_summary);
  j["families"] = ordered_json::array();
  for (const auto& f : a.families) j["families"].push_back(family_object(f));
  j["null_families"] = ordered_json::array();
  for (const auto& f : a.null_families) j["null_families"].push_back(family_object(f));
  return j.dump(2) + "\n";
}

void write_outputs(const Analysis& a, const RunConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + config.output_dir.string() + "': " + ec.message());

  auto open = [&config](const char* name) {
    std::ofstream out(config.output_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + (config.output_dir / name).string() + "'");
    return out;
  };
  auto write_table = [&open](const char* name, const Table& t) {
    auto out = open(name);
    write_csv(t, out);
  };

  Table bins = bins_table(a, false);
  const Table null_bins = bins_table(a, true);
  bins.rows.insert(bins.rows.end(), null_bins.rows.begin(), null_bins.rows.end());
  write_table("bins.csv", bins);
  write_table("lv_hist.csv", lv_hist_table(a));
  write_table("zipf.csv", zipf_table(a));
  write_table("zscores.csv", zscores_table(a));
  write_table("correlations.csv", correlations_table(a));
  open("summary.json") << summary_json(a);
  open("manifest.json") << manifest_json(config);
}

Analysis run_pipeline(const RunConfig& config) {
  const LoadedLog loaded = load_log_file(config.input, config.ingest);
  Analysis a = analyze(loaded.log, loaded.summary, config);
  write_outputs(a, config);
  return a;
}

}  // namespace burstlab
