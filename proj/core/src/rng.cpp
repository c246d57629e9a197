#include "onmf/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace onmf {

std::uint64_t SeededRng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  // Reject the low values that would bias x % n.
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return x % n;
  }
}

double exp_from_uniform(double u, double mean) {
  if (mean < 0.0) throw std::invalid_argument("exponential mean must be >= 0");
  if (mean == 0.0) return 0.0;
  return mean * -std::log1p(-u);
}

double exp_sample(SeededRng& rng, double mean) {
  if (mean < 0.0) throw std::invalid_argument("exponential mean must be >= 0");
  return exp_from_uniform(rng.uniform(), mean);
}

}  // namespace onmf
