#include "onmf/synth.hpp"

#include <stdexcept>
#include <string>

#include "onmf/rng.hpp"

namespace onmf {

std::string_view to_string(PlantMode mode) {
  return mode == PlantMode::Single ? "single" : "double";
}

PlantMode parse_plant_mode(std::string_view s) {
  if (s == "single") return PlantMode::Single;
  if (s == "double") return PlantMode::Double;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

PlantedInstance gen_planted(PlantMode mode, Index m, Index n, Index k, double noise_level,
                            std::uint64_t seed) {
  if (m < 1 || n < 1 || k < 1) throw std::invalid_argument("m, n, k must all be >= 1");
  if (noise_level < 0.0) throw std::invalid_argument("noise level must be >= 0");

  SeededRng rng(seed);
  const auto uk = static_cast<std::uint64_t>(k);

  DenseMatrix a = DenseMatrix::Zero(m, k);
  if (mode == PlantMode::Single) {
    for (Index r = 0; r < m; ++r)
      for (Index c = 0; c < k; ++c) a(r, c) = exp_sample(rng, 1.0);
  } else {
    for (Index r = 0; r < m; ++r) {
      const auto c = static_cast<Index>(rng.uniform_index(uk));
      a(r, c) = exp_sample(rng, 1.0);
    }
  }

  DenseMatrix w = DenseMatrix::Zero(k, n);
  for (Index i = 0; i < n; ++i) {
    const auto g = static_cast<Index>(rng.uniform_index(uk));
    w(g, i) = exp_sample(rng, 1.0);
  }

  DenseMatrix truth = a * w;
  DenseMatrix observed = truth;
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < n; ++c) observed(r, c) += exp_sample(rng, noise_level);

  PlantedInstance inst;
  inst.a_truth = NonNegMatrix(std::move(a));
  inst.w_truth = NonNegMatrix(std::move(w));
  inst.m_truth = NonNegMatrix(std::move(truth));
  inst.m_observed = NonNegMatrix(std::move(observed));
  inst.noise_level = noise_level;
  inst.seed = seed;
  inst.mode = mode;
  return inst;
}

PlantedInstance gen_planted_single(Index m, Index n, Index k, double noise_level,
                                   std::uint64_t seed) {
  return gen_planted(PlantMode::Single, m, n, k, noise_level, seed);
}

PlantedInstance gen_planted_double(Index m, Index n, Index k, double noise_level,
                                   std::uint64_t seed) {
  return gen_planted(PlantMode::Double, m, n, k, noise_level, seed);
}

}  // namespace onmf
