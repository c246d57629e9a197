#include "onmf/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "onmf/csv.hpp"
#include "onmf/metrics.hpp"
#include "onmf/onmf_double.hpp"
#include "onmf/onmf_single.hpp"
#include "onmf/parallel.hpp"

namespace onmf {

namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("bad number '" + std::string(s) + "' in noise grid");
  }
  return v;
}

TrialResult run_trial(const SweepConfig& config, double noise, std::uint64_t seed) {
  const PlantedInstance inst = gen_planted(config.mode, config.m, config.n, config.k, noise, seed);
  KMeansConfig km = config.kmeans;
  km.seed = seed;
  km.threads = 1;

  const auto start = std::chrono::steady_clock::now();
  const OnmfSolution sol = config.mode == PlantMode::Single
                               ? factorize_single(inst.m_observed, config.k, km)
                               : factorize_double(inst.m_observed, config.k, km);
  const auto stop = std::chrono::steady_clock::now();

  const DenseMatrix w = sol.materialized_w().matrix();
  TrialResult r;
  r.recovery_error = recovery_error(inst.m_truth.matrix(), sol.a.matrix(), w);
  r.reconstruction_error = reconstruction_error(inst.m_observed.matrix(), sol.a.matrix(), w);
  r.planted_error = (inst.m_observed.matrix() - inst.m_truth.matrix()).norm();
  r.non_orthogonality_w = non_orthogonality(w);
  r.non_orthogonality_a =
      config.mode == PlantMode::Double ? column_non_orthogonality(sol.a.matrix()) : 0.0;
  r.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

}  // namespace

double lower_median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

std::vector<double> parse_noise_grid(std::string_view spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string_view::npos) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw std::invalid_argument("range must be start:stop:step");
    const double start = parse_number(spec.substr(0, c1));
    const double stop = parse_number(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_number(spec.substr(c2 + 1));
    if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
    // Index-based so 0.1:1.0:0.1 yields exactly ten points.
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    // Rounded to 12 decimals so 0.1 + 2 * 0.1 is written as 0.3.
    for (long i = 0; i < count; ++i) {
      grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      const auto comma = spec.find(',', pos);
      grid.push_back(parse_number(spec.substr(pos, comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  for (double v : grid) {
    if (v < 0.0) throw std::invalid_argument("noise levels must be >= 0");
  }
  if (grid.empty()) throw std::invalid_argument("empty noise grid");
  return grid;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.m < 1 || config.n < 1 || config.k < 1) {
    throw std::invalid_argument("m, n, k must all be >= 1");
  }
  config.kmeans.validate();

  const auto levels = config.noise_grid.size();
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<TrialResult> results(levels * trials);
  parallel_for(results.size(), config.threads, [&](std::size_t job) {
    const std::size_t level = job / trials;
    results[job] = run_trial(config, config.noise_grid[level], config.seed + job);
  });

  std::vector<SweepRow> rows(levels);
  for (std::size_t l = 0; l < levels; ++l) {
    SweepRow& row = rows[l];
    row.noise_level = config.noise_grid[l];
    row.trials.assign(results.begin() + static_cast<std::ptrdiff_t>(l * trials),
                      results.begin() + static_cast<std::ptrdiff_t>((l + 1) * trials));
    auto column = [&](double TrialResult::*field) {
      std::vector<double> v;
      for (const auto& t : row.trials) v.push_back(t.*field);
      return v;
    };
    row.median_recovery_error = lower_median(column(&TrialResult::recovery_error));
    row.median_reconstruction_error = lower_median(column(&TrialResult::reconstruction_error));
    row.median_planted_error = lower_median(column(&TrialResult::planted_error));
    row.median_wall_time_ms = lower_median(column(&TrialResult::wall_time_ms));
    for (const auto& t : row.trials) {
      row.max_non_orthogonality_w = std::max(row.max_non_orthogonality_w, t.non_orthogonality_w);
      row.max_non_orthogonality_a = std::max(row.max_non_orthogonality_a, t.non_orthogonality_a);
    }
    row.planted_reference = std::sqrt(2.0 * static_cast<double>(config.m) *
                                      static_cast<double>(config.n)) *
                            row.noise_level;
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing) {
  out << "noise_level,median_recovery_error,median_reconstruction_error,"
         "median_planted_error,non_orthogonality_w,non_orthogonality_a,"
         "median_wall_time_ms,planted_reference\n";
  for (const auto& r : rows) {
    out << format_double(r.noise_level) << ',' << format_double(r.median_recovery_error) << ','
        << format_double(r.median_reconstruction_error) << ','
        << format_double(r.median_planted_error) << ','
        << format_double(r.max_non_orthogonality_w) << ','
        << format_double(r.max_non_orthogonality_a) << ','
        << format_double(timing ? r.median_wall_time_ms : 0.0) << ','
        << format_double(r.planted_reference) << '\n';
  }
}

}  // namespace onmf
