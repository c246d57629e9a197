#pragma once

#include <cstdint>
#include <random>

namespace onmf {

/// SplitMix64 finalizer.  Used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for the `stream`-th independent sub-generator of `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return splitmix64(base ^ splitmix64(stream));
}

/// Deterministic generator: std::mt19937_64 seeded with the 64-bit seed
/// directly.  The engine's output sequence is fixed by the C++ standard, and
/// the conversions below are written out by hand instead of going through
/// <random> distributions (whose algorithms differ between standard libraries).
///
/// Single owner; not thread safe.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).  n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Inverse-CDF exponential: -mean * ln(1 - u).  mean == 0 gives exactly 0.
double exp_from_uniform(double u, double mean);

/// Exponential draw with the given mean.  Always consumes one uniform, so the
/// stream position does not depend on `mean`.  Throws on negative mean.
double exp_sample(SeededRng& rng, double mean);

}  // namespace onmf
