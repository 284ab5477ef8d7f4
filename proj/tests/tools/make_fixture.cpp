// Writes the bundled synthetic interaction log used by the pipeline tests.
//
// 300 passive users with Zipf(1) popularity receive Gamma-renewal trains
// inside the default observation window; the shape cycles through bursty,
// Poisson and regular. Active users are drawn from a Zipf(0.8) pool of 3000.
// Lines are written in shuffled order with a few comments, one blank line,
// and three malformed lines. Output is bit-identical for a given seed.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "burstlab/ingest.hpp"
#include "burstlab/random.hpp"

namespace {

using burstlab::Rng;

std::size_t zipf_draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform() * cdf.back();
  std::size_t lo = 0;
  std::size_t hi = cdf.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (cdf[mid] < u) lo = mid + 1; else hi = mid;
  }
  return lo;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixture OUTPUT\n";
    return 1;
  }
  constexpr std::uint64_t kSeed = 20120704;
  constexpr std::size_t kPassive = 300;
  constexpr std::size_t kActivePool = 3000;
  constexpr double kTotal = 13400.0;
  const burstlab::TimeWindow window{};
  const double span = static_cast<double>(window.end - window.start);

  Rng rng(kSeed);
  std::vector<double> active_cdf(kActivePool);
  double acc = 0.0;
  for (std::size_t i = 0; i < kActivePool; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -0.8);
    active_cdf[i] = acc;
  }
  double harmonic = 0.0;
  for (std::size_t k = 1; k <= kPassive; ++k) harmonic += 1.0 / static_cast<double>(k);

  const double shapes[] = {0.3, 1.0, 4.0};
  std::vector<std::string> lines;
  for (std::size_t k = 1; k <= kPassive; ++k) {
    const auto n = static_cast<std::size_t>(std::llround(kTotal / harmonic / static_cast<double>(k)));
    if (n == 0) continue;
    const double shape = shapes[k % 3];
    const double rate = static_cast<double>(n + 1) / span;
    const std::uint64_t whom = 100000 + k;
    double t = rng.gamma(shape, rate);
    for (std::size_t i = 0; i < n && t < span; ++i, t += rng.gamma(shape, rate)) {
      const std::uint64_t who = 1 + zipf_draw(active_cdf, rng);
      const double c = rng.uniform();
      const char* tag = c < 0.6 ? "RT" : (c < 0.9 ? "MT" : "RE");
      const auto ts = window.start + static_cast<std::int64_t>(std::floor(t));
      lines.push_back(std::to_string(who) + " " + std::to_string(whom) + " " + std::to_string(ts) + " " + tag);
    }
  }
  // A few self-interactions.
  for (std::uint64_t u = 1; u <= 5; ++u) {
    lines.push_back(std::to_string(u) + " " + std::to_string(u) + " " + std::to_string(window.start + 1000 * u) + " MT");
  }
  burstlab::shuffle(std::span<std::string>(lines), rng);

  std::ofstream out(argv[1], std::ios::binary | std::ios::trunc);
  out << "# synthetic interaction log: userA userB timestamp tag\n";
  out << "# generated by make_fixture, seed " << kSeed << "\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i == 100) out << "12 34 notatime RT\n";
    if (i == 2000) out << "12 34 1341200000 XX\n";
    if (i == 5000) out << "\n12 34\n";
    out << lines[i] << '\n';
  }
  std::cerr << lines.size() << " events written\n";
  return out ? 0 : 1;
}
