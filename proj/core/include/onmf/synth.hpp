#pragma once

#include <cstdint>
#include <string_view>

#include "onmf/matrix.hpp"

namespace onmf {

enum class PlantMode { Single, Double };

std::string_view to_string(PlantMode mode);
PlantMode parse_plant_mode(std::string_view s);  // "single" | "double"

/// A synthetic instance M = A_truth * W_truth + noise.
///
/// Every non-zero entry of the planted factors is Exp(1).  Each column of
/// W_truth has exactly one non-zero at a uniformly random row; in double mode
/// each row of A_truth likewise has exactly one non-zero at a uniformly random
/// column, otherwise A_truth is fully dense.  Noise is iid Exp(noise_level)
/// added to every entry, including the zero entries of M_truth.
struct PlantedInstance {
  NonNegMatrix a_truth;
  NonNegMatrix w_truth;
  NonNegMatrix m_truth;
  NonNegMatrix m_observed;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  PlantMode mode = PlantMode::Single;
};

// Draw order from one SeededRng(seed): A_truth (row-major; in double mode one
// column index then value per row), then W_truth per column (row index, then
// value), then noise in row-major order.
PlantedInstance gen_planted_single(Index m, Index n, Index k, double noise_level,
                                   std::uint64_t seed);
PlantedInstance gen_planted_double(Index m, Index n, Index k, double noise_level,
                                   std::uint64_t seed);
PlantedInstance gen_planted(PlantMode mode, Index m, Index n, Index k, double noise_level,
                            std::uint64_t seed);

}  // namespace onmf
