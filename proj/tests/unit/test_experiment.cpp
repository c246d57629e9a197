#include <sstream>

#include <gtest/gtest.h>

#include "onmf/experiment.hpp"

namespace onmf {
namespace {

TEST(LowerMedian, OddAndEven) {
  EXPECT_EQ(lower_median({3, 1, 2}), 2.0);
  EXPECT_EQ(lower_median({4, 1, 3, 2}), 2.0);
  EXPECT_EQ(lower_median({5}), 5.0);
  EXPECT_THROW(lower_median({}), std::invalid_argument);
}

TEST(NoiseGrid, ListAndRange) {
  EXPECT_EQ(parse_noise_grid("0.1,0.5, 2"), (std::vector<double>{0.1, 0.5, 2.0}));
  const auto range = parse_noise_grid("0.1:1.0:0.1");
  ASSERT_EQ(range.size(), 10u);
  EXPECT_EQ(range[2], 0.3);
  EXPECT_EQ(range.back(), 1.0);
  EXPECT_EQ(parse_noise_grid("0:1:0.5"), (std::vector<double>{0.0, 0.5, 1.0}));
}

TEST(NoiseGrid, Errors) {
  EXPECT_THROW(parse_noise_grid(""), std::invalid_argument);
  EXPECT_THROW(parse_noise_grid("0.1,abc"), std::invalid_argument);
  EXPECT_THROW(parse_noise_grid("-0.1"), std::invalid_argument);
  EXPECT_THROW(parse_noise_grid("0:1"), std::invalid_argument);
  EXPECT_THROW(parse_noise_grid("0:1:0"), std::invalid_argument);
}

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.m = 8;
  cfg.n = 20;
  cfg.k = 3;
  cfg.noise_grid = {0.0, 0.5};
  cfg.trials = 3;
  cfg.seed = 5;
  cfg.kmeans.restarts = 3;
  return cfg;
}

TEST(RunSweep, RowsAndReferences) {
  for (auto mode : {PlantMode::Single, PlantMode::Double}) {
    auto cfg = small_config();
    cfg.mode = mode;
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].median_planted_error, 0.0);
    EXPECT_EQ(rows[0].planted_reference, 0.0);
    EXPECT_NEAR(rows[1].planted_reference, std::sqrt(2.0 * 8 * 20) * 0.5, 1e-12);
    for (const auto& r : rows) {
      EXPECT_EQ(r.trials.size(), 3u);
      EXPECT_EQ(r.max_non_orthogonality_w, 0.0);
      EXPECT_EQ(r.max_non_orthogonality_a, 0.0);
    }
  }
}

TEST(RunSweep, CsvIndependentOfThreadCount) {
  auto cfg = small_config();
  std::ostringstream one;
  write_sweep_csv(one, run_sweep(cfg), false);
  cfg.threads = 4;
  std::ostringstream four;
  write_sweep_csv(four, run_sweep(cfg), false);
  EXPECT_EQ(one.str(), four.str());
  EXPECT_EQ(one.str().substr(0, one.str().find('\n')),
            "noise_level,median_recovery_error,median_reconstruction_error,median_planted_error,"
            "non_orthogonality_w,non_orthogonality_a,median_wall_time_ms,planted_reference");
}

TEST(RunSweep, InvalidConfig) {
  auto cfg = small_config();
  cfg.trials = 0;
  EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
}

}  // namespace
}  // namespace onmf
