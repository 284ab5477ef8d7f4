// burstlab: spike-train analysis of directed interaction logs.
//
//   burstlab ingest  <log> [ingest options]
//   burstlab trains  <log> --role R --channel C [--dump trains.csv [--with-times]]
//   burstlab lv      <log> --role R --channel C
//   burstlab null    <log> --role R --channel C --seed S
//   burstlab synth   poisson|gamma --n N --rate R [--shape K] --seed S --trains M
//   burstlab analyze <log> [--out DIR] [--bins SPEC] [--lv-hist-width W] ...
//   burstlab export  <log> --format gnuplot|json [analysis options]
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "burstlab/error.hpp"
#include "burstlab/export.hpp"
#include "burstlab/format.hpp"
#include "burstlab/ingest.hpp"
#include "burstlab/localvar.hpp"
#include "burstlab/nullmodel.hpp"
#include "burstlab/pipeline.hpp"
#include "burstlab/random.hpp"
#include "burstlab/trains.hpp"
#include "json.hpp"

namespace {

using namespace burstlab;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void report_error(int code, std::string_view kind, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

struct IngestArgs {
  std::vector<Timestamp> window;
  std::string direction = "a-active";
  std::string self = "drop";
  bool strict = false;

  void attach(CLI::App* app) {
    app->add_option("--window", window, "Inclusive observation window START END (epoch seconds)")->expected(2);
    app->add_option("--direction", direction, "Which column is the active user")
        ->check(CLI::IsMember({"a-active", "b-active"}));
    app->add_option("--self", self, "Self-interaction policy")->check(CLI::IsMember({"keep", "drop"}));
    app->add_flag("--strict", strict, "Fail on the first malformed line");
  }

  IngestOptions options() const {
    IngestOptions o;
    if (window.size() == 2) o.window = {window[0], window[1]};
    o.direction = direction == "b-active" ? Direction::BActive : Direction::AActive;
    o.self = self == "keep" ? SelfPolicy::Keep : SelfPolicy::Drop;
    o.malformed = strict ? MalformedPolicy::Strict : MalformedPolicy::Skip;
    return o;
  }
};

struct FamilyArgs {
  std::string role = "active";
  std::string channel = "all";
  std::string freq = "post-dedup";

  void attach(CLI::App* app) {
    app->add_option("--role", role, "active|passive")->check(CLI::IsMember({"active", "passive"}));
    app->add_option("--channel", channel, "all|rt|mention|reply")
        ->check(CLI::IsMember({"all", "rt", "mention", "reply"}));
    app->add_option("--freq", freq, "Spike count used as f_U")->check(CLI::IsMember({"post-dedup", "pre-dedup"}));
  }

  Role role_value() const { return *parse_role(role); }
  Channel channel_value() const { return *parse_channel(channel); }
  FrequencyMode freq_value() const { return freq == "pre-dedup" ? FrequencyMode::PreDedup : FrequencyMode::PostDedup; }
};

struct NullArgs {
  std::string scope = "view";
  std::string counts = "exact";

  void attach(CLI::App* app) {
    app->add_option("--null-scope", scope, "Timestamp pool for the permutation null")
        ->check(CLI::IsMember({"view", "global"}));
    app->add_option("--null-counts", counts, "Per-user count preservation")
        ->check(CLI::IsMember({"exact", "expected"}));
  }

  NullOptions options() const {
    NullOptions o;
    o.scope = scope == "global" ? ShuffleScope::Global : ShuffleScope::View;
    o.counts = counts == "expected" ? CountPreservation::Expected : CountPreservation::Exact;
    return o;
  }
};

struct AnalysisArgs {
  std::string bins = "log";
  double lv_hist_width = 0.1;
  std::vector<std::uint64_t> null_seeds{1};
  bool no_null = false;
  std::string z_denominator = "user_count";
  std::string freq = "post-dedup";
  std::vector<std::string> roles{"active", "passive"};
  std::vector<std::string> channels{"all", "rt", "mention", "reply"};

  void attach(CLI::App* app) {
    app->add_option("--bins", bins, "Frequency classes: log, log:START:WIDTH, or explicit edges e1,e2,...");
    app->add_option("--lv-hist-width", lv_hist_width, "Bin width of the P(L_V) histograms");
    app->add_option("--null-seeds", null_seeds, "Seeds of the permutation null runs")->delimiter(',');
    app->add_flag("--no-null", no_null, "Skip the permutation null");
    app->add_option("--z-denominator", z_denominator, "Reading of f_U^k in the z-value denominator")
        ->check(CLI::IsMember({"user_count", "frequency"}));
    app->add_option("--freq", freq, "Spike count used as f_U")->check(CLI::IsMember({"post-dedup", "pre-dedup"}));
    app->add_option("--roles", roles, "Roles to analyze")->delimiter(',')->check(CLI::IsMember({"active", "passive"}));
    app->add_option("--channels", channels, "Channels to analyze")
        ->delimiter(',')
        ->check(CLI::IsMember({"all", "rt", "mention", "reply"}));
  }

  void apply(RunConfig& c) const {
    try {
      c.bins = BinScheme::parse(bins);
      histogram_bins(lv_hist_width);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    c.lv_hist_width = lv_hist_width;
    c.null_seeds = no_null ? std::vector<std::uint64_t>{} : null_seeds;
    c.z_denominator = *parse_z_denominator(z_denominator);
    c.frequency = freq == "pre-dedup" ? FrequencyMode::PreDedup : FrequencyMode::PostDedup;
    c.roles.clear();
    for (const auto& r : roles) c.roles.push_back(*parse_role(r));
    c.channels.clear();
    for (const auto& ch : channels) c.channels.push_back(*parse_channel(ch));
  }
};

// Writes to `path`, or stdout when empty.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  fn(out);
}

int run(int argc, char** argv) {
  CLI::App app{"burstlab: local-variation analysis of interaction spike trains"};
  app.require_subcommand(1);

  // ingest
  std::string ingest_path;
  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "Validate a log and print its summary as JSON");
  ingest->add_option("log", ingest_path, "Interaction log")->required();
  ingest_args.attach(ingest);

  // trains
  std::string trains_path;
  std::string trains_dump;
  bool trains_times = false;
  IngestArgs trains_ingest;
  FamilyArgs trains_family;
  auto* trains = app.add_subcommand("trains", "Build one family of spike trains");
  trains->add_option("log", trains_path, "Interaction log")->required();
  trains->add_option("--dump", trains_dump, "Write per-train CSV here");
  trains->add_flag("--with-times", trains_times, "Include deduped timestamps in the dump");
  trains_ingest.attach(trains);
  trains_family.attach(trains);

  // lv
  std::string lv_path;
  std::string lv_out;
  IngestArgs lv_ingest;
  FamilyArgs lv_family;
  auto* lv = app.add_subcommand("lv", "Local variation of every train of one family (CSV)");
  lv->add_option("log", lv_path, "Interaction log")->required();
  lv->add_option("-o,--output", lv_out, "Output file (default stdout)");
  lv_ingest.attach(lv);
  lv_family.attach(lv);

  // null
  std::string null_path;
  std::string null_out;
  std::uint64_t null_seed = 1;
  IngestArgs null_ingest;
  FamilyArgs null_family;
  NullArgs null_args;
  auto* null = app.add_subcommand("null", "Local variation of permuted (null) trains (CSV)");
  null->add_option("log", null_path, "Interaction log")->required();
  null->add_option("--seed", null_seed, "Permutation seed");
  null->add_option("-o,--output", null_out, "Output file (default stdout)");
  null_ingest.attach(null);
  null_family.attach(null);
  null_args.attach(null);

  // synth
  std::string synth_kind;
  std::size_t synth_n = 10000;
  double synth_rate = 1.0;
  double synth_shape = 1.0;
  std::uint64_t synth_seed = 1;
  std::size_t synth_trains = 1;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Local variation of synthetic renewal trains (CSV)");
  synth->add_option("kind", synth_kind, "poisson|gamma")->required()->check(CLI::IsMember({"poisson", "gamma"}));
  synth->add_option("--n", synth_n, "Spikes per train");
  synth->add_option("--rate", synth_rate, "Events per second");
  synth->add_option("--shape", synth_shape, "Gamma shape");
  synth->add_option("--seed", synth_seed, "Base seed");
  synth->add_option("--trains", synth_trains, "Number of trains");
  synth->add_option("-o,--output", synth_out, "Output file (default stdout)");

  // analyze
  std::string analyze_path;
  std::string analyze_out;
  std::string analyze_manifest;
  IngestArgs analyze_ingest;
  AnalysisArgs analyze_args;
  NullArgs analyze_null;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis; writes CSV/JSON outputs to a directory");
  analyze_cmd->add_option("log", analyze_path, "Interaction log");
  analyze_cmd->add_option("--out", analyze_out, "Output directory (default burstlab-out)");
  analyze_cmd->add_option("--manifest", analyze_manifest, "Re-run the configuration stored in a manifest.json");
  analyze_ingest.attach(analyze_cmd);
  analyze_args.attach(analyze_cmd);
  analyze_null.attach(analyze_cmd);

  // export
  std::string export_path;
  std::string export_format = "gnuplot";
  std::string export_out;
  IngestArgs export_ingest;
  AnalysisArgs export_args;
  NullArgs export_null;
  auto* export_cmd = app.add_subcommand("export", "Plot-ready tables on stdout");
  export_cmd->add_option("log", export_path, "Interaction log")->required();
  export_cmd->add_option("--format", export_format, "gnuplot|json")->check(CLI::IsMember({"gnuplot", "json"}));
  export_cmd->add_option("-o,--output", export_out, "Output file (default stdout)");
  export_ingest.attach(export_cmd);
  export_args.attach(export_cmd);
  export_null.attach(export_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  auto print_warnings = [](const LogSummary& s) {
    if (s.skipped_malformed > 0) {
      std::cerr << "warning: skipped " << s.skipped_malformed << " malformed line(s)\n";
      for (const auto& w : s.warnings) std::cerr << "  " << w << '\n';
    }
  };

  if (*ingest) {
    const auto loaded = load_log_file(ingest_path, ingest_args.options());
    print_warnings(loaded.summary);
    std::cout << log_summary_json(loaded.summary);
    return kOk;
  }

  if (*trains) {
    const auto loaded = load_log_file(trains_path, trains_ingest.options());
    print_warnings(loaded.summary);
    const TrainSet set = build_trains(loaded.log, trains_family.role_value(), trains_family.channel_value());
    std::size_t lv_ready = 0;
    for (const auto& t : set) {
      if (dedup_one_second(t).size() >= 3) ++lv_ready;
    }
    nlohmann::ordered_json j;
    j["role"] = trains_family.role;
    j["channel"] = trains_family.channel;
    j["n_trains"] = set.size();
    j["n_lv_eligible"] = lv_ready;
    std::cout << j.dump(2) << '\n';
    if (!trains_dump.empty()) {
      with_output(trains_dump, [&](std::ostream& out) {
        write_csv(trains_table(set, trains_family.freq_value(), trains_times), out);
      });
    }
    return kOk;
  }

  if (*lv) {
    const auto loaded = load_log_file(lv_path, lv_ingest.options());
    print_warnings(loaded.summary);
    const auto records =
        measure_all(build_trains(loaded.log, lv_family.role_value(), lv_family.channel_value()), lv_family.freq_value());
    with_output(lv_out, [&](std::ostream& out) { write_csv(lv_table(records), out); });
    return kOk;
  }

  if (*null) {
    const auto loaded = load_log_file(null_path, null_ingest.options());
    print_warnings(loaded.summary);
    const auto raw = permute_null_raw(loaded.log, null_family.role_value(), null_family.channel_value(),
                                      Seed{null_seed}, null_args.options());
    const auto records = measure_all(raw, null_family.freq_value());
    with_output(null_out, [&](std::ostream& out) { write_csv(lv_table(records), out); });
    return kOk;
  }

  if (*synth) {
    if (synth_n < 3 || !(synth_rate > 0.0) || !(synth_shape > 0.0)) {
      throw UsageError("synth needs --n >= 3, --rate > 0 and --shape > 0");
    }
    Table t{"synth", {"user_id", "role", "channel", "n_spikes", "lv", "exclusion"}, {}};
    for (std::size_t i = 0; i < synth_trains; ++i) {
      const Seed seed{derive_seed(synth_seed, i)};
      const RenewalTrain train = synth_kind == "poisson" ? gen_poisson(synth_rate, synth_n, seed)
                                                         : gen_gamma(synth_shape, synth_rate, synth_n, seed);
      const LvValue v = local_variation(train);
      t.rows.push_back({cell(i), Cell{std::string("synthetic")}, Cell{std::string("all")}, cell(train.size()),
                        v.ok() ? Cell{v.value} : Cell{}, Cell{std::string(to_string(v.status))}});
    }
    with_output(synth_out, [&](std::ostream& out) { write_csv(t, out); });
    return kOk;
  }

  if (*analyze_cmd) {
    RunConfig config;
    if (!analyze_manifest.empty()) {
      try {
        config = load_manifest(analyze_manifest);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (!analyze_path.empty()) config.input = analyze_path;
    } else {
      if (analyze_path.empty()) throw UsageError("analyze needs a log file or --manifest");
      config.input = analyze_path;
      config.ingest = analyze_ingest.options();
      analyze_args.apply(config);
      config.null = analyze_null.options();
    }
    if (!analyze_out.empty()) config.output_dir = analyze_out;
    const Analysis a = run_pipeline(config);
    print_warnings(a.log_summary);
    std::cerr << "wrote outputs to " << config.output_dir.string() << '\n';
    return kOk;
  }

  if (*export_cmd) {
    RunConfig config;
    config.input = export_path;
    config.ingest = export_ingest.options();
    export_args.apply(config);
    config.null = export_null.options();
    const auto loaded = load_log_file(config.input, config.ingest);
    print_warnings(loaded.summary);
    const Analysis a = analyze(loaded.log, loaded.summary, config);
    const auto tables = plot_tables(a, config);
    with_output(export_out, [&](std::ostream& out) {
      export_tables(tables, *parse_export_format(export_format), out);
    });
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    report_error(kUsage, "usage", e.what());
    return kUsage;
  } catch (const burstlab::Error& e) {
    report_error(kData, "data", e.what());
    return kData;
  } catch (const std::invalid_argument& e) {
    report_error(kUsage, "usage", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    report_error(kInternal, "internal", e.what());
    return kInternal;
  }
}
