#include "burstlab/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace burstlab {

// ---------------------------------------------------------------------------
// Zipf

std::vector<ZipfRecord> zipf_ranks(std::span<const std::pair<UserId, std::size_t>> freqs, Role role,
                                   Channel channel) {
  std::vector<ZipfRecord> out;
  out.reserve(freqs.size());
  for (const auto& [user, f] : freqs) out.push_back({0, user, f, role, channel});
  std::sort(out.begin(), out.end(), [](const ZipfRecord& a, const ZipfRecord& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.user < b.user;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

std::vector<ZipfRecord> zipf_ranks(std::span<const LvRecord> records, Role role, Channel channel) {
  std::vector<std::pair<UserId, std::size_t>> freqs;
  freqs.reserve(records.size());
  for (const auto& r : records) freqs.emplace_back(r.key.user, r.frequency);
  return zipf_ranks(freqs, role, channel);
}

// ---------------------------------------------------------------------------
// Binning

BinScheme BinScheme::logarithmic(double start, double width) {
  if (!(start > 0.0) || !(width > 0.0)) throw std::invalid_argument("log bins need start > 0 and width > 0");
  BinScheme s;
  s.logarithmic_ = true;
  s.start_ = start;
  s.width_ = width;
  return s;
}

BinScheme BinScheme::explicit_edges(std::vector<double> edges) {
  if (edges.empty()) throw std::invalid_argument("explicit bins need at least one edge");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw std::invalid_argument("bin edges must be strictly increasing");
  }
  if (!(edges.front() > 0.0)) throw std::invalid_argument("bin edges must be positive");
  BinScheme s;
  s.logarithmic_ = false;
  s.explicit_ = std::move(edges);
  return s;
}

namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + std::string(s) + "' in bin scheme");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

BinScheme BinScheme::parse(std::string_view text) {
  if (text == "log") return logarithmic();
  if (text.starts_with("log:")) {
    const auto parts = split(text.substr(4), ':');
    if (parts.size() != 2) throw std::invalid_argument("expected log:START:WIDTH");
    return logarithmic(parse_double(parts[0]), parse_double(parts[1]));
  }
  std::vector<double> edges;
  for (auto p : split(text, ',')) edges.push_back(parse_double(p));
  return explicit_edges(std::move(edges));
}

std::string BinScheme::to_string() const {
  if (logarithmic_) return "log:" + shortest(start_) + ":" + shortest(width_);
  std::string out;
  for (std::size_t i = 0; i < explicit_.size(); ++i) {
    if (i) out += ',';
    out += shortest(explicit_[i]);
  }
  return out;
}

std::vector<double> BinScheme::edges(std::size_t max_f) const {
  if (!logarithmic_) return explicit_;
  std::vector<double> e;
  const double top = static_cast<double>(max_f);
  for (std::size_t k = 0;; ++k) {
    e.push_back(start_ * std::pow(10.0, static_cast<double>(k) * width_));
    if (e.back() > top) break;
  }
  return e;
}

Binning bin_by_frequency(std::span<const LvRecord> records, const BinScheme& scheme) {
  std::size_t max_f = 0;
  for (const auto& r : records) max_f = std::max(max_f, r.frequency);
  const std::vector<double> edges = scheme.edges(max_f);

  Binning b;
  b.class_of.reserve(records.size());
  std::size_t top_class = 0;
  for (const auto& r : records) {
    const double f = static_cast<double>(r.frequency);
    const auto k = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), f) - edges.begin());
    b.class_of.push_back(k);
    top_class = std::max(top_class, k);
  }

  b.classes.resize(top_class + 1);
  for (std::size_t k = 0; k <= top_class; ++k) {
    auto& c = b.classes[k];
    c.index = k;
    c.lo = k == 0 ? 0.0 : edges[k - 1];
    c.hi = k < edges.size() ? edges[k] : std::numeric_limits<double>::infinity();
  }
  std::vector<double> sum_f(b.classes.size(), 0.0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& c = b.classes[b.class_of[i]];
    c.members.push_back(i);
    sum_f[c.index] += static_cast<double>(records[i].frequency);
  }
  for (auto& c : b.classes) {
    c.member_count = c.members.size();
    c.mean_log10_f = c.member_count == 0 ? std::numeric_limits<double>::quiet_NaN()
                                         : std::log10(sum_f[c.index] / static_cast<double>(c.member_count));
  }
  return b;
}

// ---------------------------------------------------------------------------
// Summaries

double BinSummary::mean_frequency() const { return std::pow(10.0, mean_log10_f); }

std::size_t histogram_bins(double width) {
  if (!(width > 0.0) || width > 3.0) throw std::invalid_argument("L_V histogram width must be in (0, 3]");
  const double n = 3.0 / width;
  const double rounded = std::round(n);
  return static_cast<std::size_t>(std::abs(n - rounded) < 1e-9 ? rounded : std::ceil(n));
}

BinSummary bin_summary(std::span<const LvRecord> members, const FrequencyClass& cls, Role role,
                       Channel channel, double hist_width) {
  BinSummary s;
  s.class_index = cls.index;
  s.lo = cls.lo;
  s.hi = cls.hi;
  s.mean_log10_f = cls.mean_log10_f;
  s.member_count = members.size();
  s.role = role;
  s.channel = channel;
  s.hist_width = hist_width;
  s.histogram.assign(histogram_bins(hist_width), 0.0);

  double sum = 0.0;
  for (const auto& r : members) {
    if (!r.lv.ok()) {
      ++s.excluded_count;
      continue;
    }
    ++s.n_included;
    sum += r.lv.value;
  }
  if (s.n_included == 0) return s;

  const auto n = static_cast<double>(s.n_included);
  s.mu = sum / n;
  double ss = 0.0;
  for (const auto& r : members) {
    if (!r.lv.ok()) continue;
    const double d = r.lv.value - s.mu;
    ss += d * d;
    auto bin = static_cast<std::size_t>(std::floor(r.lv.value / hist_width));
    s.histogram[std::min(bin, s.histogram.size() - 1)] += 1.0;
  }
  s.sigma = std::sqrt(ss / n);
  s.degenerate = s.n_included == 1;
  for (auto& h : s.histogram) h /= n;
  return s;
}

std::vector<LvRecord> class_members(std::span<const LvRecord> records, const FrequencyClass& cls) {
  std::vector<LvRecord> out;
  out.reserve(cls.members.size());
  for (auto i : cls.members) out.push_back(records[i]);
  return out;
}

// ---------------------------------------------------------------------------
// z-values

std::string_view to_string(ZComparison c) {
  switch (c) {
    case ZComparison::FullVsRT: return "full_vs_rt";
    case ZComparison::FullVsMention: return "full_vs_mention";
    case ZComparison::MentionVsRT: return "mention_vs_rt";
  }
  return "?";
}

std::string_view to_string(ZDenominator d) {
  return d == ZDenominator::UserCount ? "user_count" : "frequency";
}

std::optional<ZDenominator> parse_z_denominator(std::string_view s) {
  if (s == "user_count" || s == "count" || s == "users") return ZDenominator::UserCount;
  if (s == "frequency") return ZDenominator::Frequency;
  return std::nullopt;
}

std::optional<double> z_value(double mu_k, double mu_0, double sigma_k, double f_k) {
  if (!(sigma_k > 0.0) || !(f_k > 0.0)) return std::nullopt;
  const double z = (mu_k - mu_0) / (sigma_k / std::sqrt(f_k));
  if (!std::isfinite(z)) return std::nullopt;
  return z;
}

namespace {

ZScoreRecord make_z(const BinSummary& k, const BinSummary& base, ZComparison cmp, ZDenominator denom) {
  ZScoreRecord rec;
  rec.class_index = k.class_index;
  rec.lo = k.lo;
  rec.hi = k.hi;
  rec.mean_log10_f = k.mean_log10_f;
  rec.role = k.role;
  rec.comparison = cmp;
  rec.denominator = denom;
  rec.mu_k = k.mu;
  rec.mu_0 = base.mu;
  rec.sigma_k = k.sigma;
  rec.f_k = denom == ZDenominator::UserCount ? static_cast<double>(k.n_included)
                                             : (k.defined() ? k.mean_frequency() : 0.0);
  constexpr double na = std::numeric_limits<double>::quiet_NaN();
  if (!k.defined()) rec.mu_k = rec.sigma_k = rec.f_k = na;
  if (!base.defined()) rec.mu_0 = na;
  if (k.defined() && base.defined() && k.class_index == base.class_index) {
    rec.z = z_value(rec.mu_k, rec.mu_0, rec.sigma_k, rec.f_k);
  }
  return rec;
}

}  // namespace

ZScoreRecord z_channel_vs_full(const BinSummary& summary_k, const BinSummary& summary_full,
                               ZComparison comparison, ZDenominator denominator) {
  return make_z(summary_k, summary_full, comparison, denominator);
}

ZScoreRecord z_cross_channel(const BinSummary& summary_mention, const BinSummary& summary_rt,
                             ZDenominator denominator) {
  return make_z(summary_mention, summary_rt, ZComparison::MentionVsRT, denominator);
}

// ---------------------------------------------------------------------------
// Pearson

std::string_view to_string(ChannelPair p) {
  switch (p) {
    case ChannelPair::FullRT: return "full_rt";
    case ChannelPair::FullMention: return "full_mention";
    case ChannelPair::RTMention: return "rt_mention";
  }
  return "?";
}

std::string_view to_string(PairingMode m) {
  return m == PairingMode::CrossUser ? "cross_user" : "same_user";
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::vector<double> defined_values(std::span<const LvRecord> records) {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) {
    if (r.lv.ok()) v.push_back(r.lv.value);
  }
  return v;
}

}  // namespace

CorrelationRecord pearson_cross_user(std::span<const LvRecord> lv_k, std::span<const LvRecord> lv_k2) {
  auto x = defined_values(lv_k);
  auto y = defined_values(lv_k2);
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  const std::size_t n = std::min(x.size(), y.size());
  x.resize(n);
  y.resize(n);

  CorrelationRecord rec;
  rec.mode = PairingMode::CrossUser;
  rec.n_pairs = n;
  rec.r = pearson(x, y);
  return rec;
}

CorrelationRecord pearson_same_user(std::span<const LvRecord> lv_k, std::span<const LvRecord> lv_k2) {
  std::vector<std::pair<UserId, double>> a;
  std::vector<std::pair<UserId, double>> b;
  for (const auto& r : lv_k) {
    if (r.lv.ok()) a.emplace_back(r.key.user, r.lv.value);
  }
  for (const auto& r : lv_k2) {
    if (r.lv.ok()) b.emplace_back(r.key.user, r.lv.value);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      x.push_back(a[i].second);
      y.push_back(b[j].second);
      ++i;
      ++j;
    }
  }

  CorrelationRecord rec;
  rec.mode = PairingMode::SameUser;
  rec.n_pairs = x.size();
  rec.r = pearson(x, y);
  return rec;
}

}  // namespace burstlab
