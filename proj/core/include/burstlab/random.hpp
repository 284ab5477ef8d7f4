#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace burstlab {

// Seeded random source with bit-reproducible output on every platform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not (their algorithms are
// implementation-defined), so every variate below is derived from raw 64-bit
// engine output with a fixed algorithm:
//   uniform     53-bit mantissa, open interval (0, 1)
//   bounded     Lemire's multiply-shift with rejection (unbiased)
//   exponential inversion, -log(u) / rate
//   normal      Marsaglia polar method
//   gamma       Marsaglia-Tsang squeeze; shape < 1 boosted via U^(1/shape)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  std::uint64_t bounded(std::uint64_t n);  // uniform on [0, n), n > 0
  double exponential(double rate);
  double normal();
  double gamma(double shape, double rate);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Fisher-Yates shuffle driven by Rng::bounded.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

// SplitMix64 finalizer; derives independent child seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace burstlab
