#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "burstlab/localvar.hpp"
#include "burstlab/types.hpp"

namespace burstlab {

// ---------------------------------------------------------------------------
// Zipf ranks

struct ZipfRecord {
  std::size_t rank = 0;  // 1-based
  UserId user = 0;
  std::size_t frequency = 0;
  Role role = Role::Active;
  Channel channel = Channel::All;
};

// Sorted by descending frequency, ties by ascending user id.
std::vector<ZipfRecord> zipf_ranks(std::span<const std::pair<UserId, std::size_t>> freqs, Role role,
                                   Channel channel);
std::vector<ZipfRecord> zipf_ranks(std::span<const LvRecord> records, Role role, Channel channel);

// ---------------------------------------------------------------------------
// Frequency classes

// Class edges on f_U. Class 0 is the underflow class [0, e_0); class k >= 1
// is [e_{k-1}, e_k). A logarithmic scheme grows edges e_k = start * 10^(k *
// width) until they pass the largest observed f_U. An explicit scheme ends
// with an overflow class [e_last, inf).
class BinScheme {
 public:
  static BinScheme logarithmic(double start = 3.0, double width = 0.25);
  static BinScheme explicit_edges(std::vector<double> edges);

  // Accepts "log", "log:START:WIDTH" or a comma-separated edge list
  // ("1,3,10,100"). Throws std::invalid_argument.
  static BinScheme parse(std::string_view text);
  std::string to_string() const;

  bool is_logarithmic() const { return logarithmic_; }

  // Edges covering every f <= max_f.
  std::vector<double> edges(std::size_t max_f) const;

 private:
  bool logarithmic_ = true;
  double start_ = 3.0;
  double width_ = 0.25;
  std::vector<double> explicit_;
};

struct FrequencyClass {
  std::size_t index = 0;
  double lo = 0.0;  // inclusive
  double hi = 0.0;  // exclusive, may be +inf
  double mean_log10_f = 0.0;  // log10 of the mean f_U of members; NaN when empty
  std::size_t member_count = 0;
  std::vector<std::size_t> members;  // indices into the binned records
};

struct Binning {
  std::vector<FrequencyClass> classes;  // classes[i].index == i
  std::vector<std::size_t> class_of;    // per input record
};

// Assigns every record (excluded ones too) to exactly one class. Classes run
// from the underflow class up to the last one holding a record.
Binning bin_by_frequency(std::span<const LvRecord> records, const BinScheme& scheme);

// ---------------------------------------------------------------------------
// Per-class summaries

struct BinSummary {
  std::size_t class_index = 0;
  double lo = 0.0;
  double hi = 0.0;
  double mean_log10_f = 0.0;
  std::size_t member_count = 0;
  Role role = Role::Active;
  Channel channel = Channel::All;

  std::size_t n_included = 0;      // members with a defined L_V
  std::size_t excluded_count = 0;  // members with N < 3 (or otherwise excluded)
  double mu = 0.0;
  double sigma = 0.0;  // population standard deviation
  bool degenerate = false;  // exactly one included member, sigma forced to 0

  double hist_width = 0.1;
  std::vector<double> histogram;  // P(L_V) per bin on [0, 3); sums to 1

  bool defined() const { return n_included > 0; }
  double mean_frequency() const;
};

std::size_t histogram_bins(double width);

// Summary of the class members. Requires member_count >= 1; a class whose
// members are all excluded yields an undefined summary (n_included == 0).
BinSummary bin_summary(std::span<const LvRecord> members, const FrequencyClass& cls, Role role,
                       Channel channel, double hist_width = 0.1);

// Convenience: selects the members of `cls` from `records`.
std::vector<LvRecord> class_members(std::span<const LvRecord> records, const FrequencyClass& cls);

// ---------------------------------------------------------------------------
// z-values

enum class ZComparison : std::uint8_t { FullVsRT, FullVsMention, MentionVsRT };

// How f_U^k under the square root is read: the number of users in the class
// for channel k, or the class's mean frequency for channel k.
enum class ZDenominator : std::uint8_t { UserCount, Frequency };

std::string_view to_string(ZComparison c);
std::string_view to_string(ZDenominator d);
std::optional<ZDenominator> parse_z_denominator(std::string_view s);

struct ZScoreRecord {
  std::size_t class_index = 0;
  double lo = 0.0;
  double hi = 0.0;
  double mean_log10_f = 0.0;  // of channel k
  Role role = Role::Active;
  ZComparison comparison = ZComparison::FullVsRT;
  ZDenominator denominator = ZDenominator::UserCount;
  double mu_k = 0.0;
  double mu_0 = 0.0;
  double sigma_k = 0.0;
  double f_k = 0.0;
  std::optional<double> z;
};

// (mu_k - mu_0) / (sigma_k / sqrt(f_k)); nullopt when sigma_k or f_k is not
// positive.
std::optional<double> z_value(double mu_k, double mu_0, double sigma_k, double f_k);

// Channel k (RT or Mention) against the full train of the same class.
ZScoreRecord z_channel_vs_full(const BinSummary& summary_k, const BinSummary& summary_full,
                               ZComparison comparison, ZDenominator denominator);

// Mention against RT in the same class.
ZScoreRecord z_cross_channel(const BinSummary& summary_mention, const BinSummary& summary_rt,
                             ZDenominator denominator);

// ---------------------------------------------------------------------------
// Pearson correlations of L_V

enum class ChannelPair : std::uint8_t { FullRT, FullMention, RTMention };
enum class PairingMode : std::uint8_t { CrossUser, SameUser };

std::string_view to_string(ChannelPair p);
std::string_view to_string(PairingMode m);

// Sample Pearson coefficient over the first min(|x|, |y|) entries; nullopt
// when fewer than two pairs or either side has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationRecord {
  std::size_t class_index = 0;
  double lo = 0.0;
  double hi = 0.0;
  double mean_log10_f_k = 0.0;
  double mean_log10_f_k2 = 0.0;
  Role role = Role::Active;
  ChannelPair pair = ChannelPair::FullRT;
  PairingMode mode = PairingMode::CrossUser;
  std::size_t n_pairs = 0;
  std::optional<double> r;
};

// Both channels' L_V values sorted descending, the longer tail truncated,
// paired by rank. Records without a defined L_V are ignored.
CorrelationRecord pearson_cross_user(std::span<const LvRecord> lv_k, std::span<const LvRecord> lv_k2);

// Pairs (L_V^k, L_V^k2) of users present with a defined L_V on both sides.
CorrelationRecord pearson_same_user(std::span<const LvRecord> lv_k, std::span<const LvRecord> lv_k2);

}  // namespace burstlab
