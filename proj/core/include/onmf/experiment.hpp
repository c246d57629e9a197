#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "onmf/kmeans.hpp"
#include "onmf/synth.hpp"

namespace onmf {

/// Noise sweep over planted instances.  For each noise level, `trials`
/// independent instances are generated and factorized (same mode for the
/// generator and the algorithm).  Trial t at level index l uses seed
/// base_seed + l * trials + t for both the instance and the k-means restarts.
struct SweepConfig {
  Index m = 50;
  Index n = 500;
  Index k = 10;
  std::vector<double> noise_grid;
  int trials = 7;
  std::uint64_t seed = 0;
  PlantMode mode = PlantMode::Single;
  KMeansConfig kmeans;  // seed and threads are overridden per trial
  unsigned threads = 1; // trials run concurrently when > 1
};

struct TrialResult {
  double recovery_error = 0.0;
  double reconstruction_error = 0.0;
  double planted_error = 0.0;  // ||M - M_truth||_F
  double non_orthogonality_w = 0.0;
  double non_orthogonality_a = 0.0;  // reported for double mode, 0 otherwise
  double wall_time_ms = 0.0;
};

/// One row per noise level.  Medians are lower medians for even trial
/// counts; non-orthogonality columns are the maximum over trials.
struct SweepRow {
  double noise_level = 0.0;
  double median_recovery_error = 0.0;
  double median_reconstruction_error = 0.0;
  double median_planted_error = 0.0;
  double max_non_orthogonality_w = 0.0;
  double max_non_orthogonality_a = 0.0;
  double median_wall_time_ms = 0.0;
  double planted_reference = 0.0;  // sqrt(2 m n) * noise_level
  std::vector<TrialResult> trials;
};

double lower_median(std::vector<double> values);

/// Parses "0.1,0.2,0.5" or an inclusive range "start:stop:step".
std::vector<double> parse_noise_grid(std::string_view spec);

std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// CSV with a header line.  With timing == false the wall-time column is 0 so
/// the output is byte-reproducible.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing);

}  // namespace onmf
