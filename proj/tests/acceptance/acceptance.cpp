// Acceptance suite.  Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails or exceeds its time budget.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "onmf/bcc.hpp"
#include "onmf/experiment.hpp"
#include "onmf/metrics.hpp"
#include "onmf/onmf_double.hpp"
#include "onmf/onmf_single.hpp"
#include "onmf/synth.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#ifndef ONMF_CLI_PATH
#error "ONMF_CLI_PATH must point at the onmf executable"
#endif

namespace fs = std::filesystem;
using namespace onmf;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

KMeansConfig kmeans_config(int restarts, std::uint64_t seed) {
  KMeansConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

// --- 1 -----------------------------------------------------------------
Outcome orthogonality_exactness() {
  std::mt19937_64 gen(1001);
  const double noises[] = {0.0, 0.1, 0.5, 1.0};
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = testing::random_index(gen, 1, 60);
    const Index n = testing::random_index(gen, 1, 60);
    const Index k = testing::random_index(gen, 1, 10);
    const double noise = noises[trial % 4];
    const auto mode = trial % 2 ? PlantMode::Double : PlantMode::Single;
    const auto inst = gen_planted(mode, m, n, k, noise, static_cast<std::uint64_t>(trial));
    const auto cfg = kmeans_config(10, static_cast<std::uint64_t>(trial));

    const auto single = factorize_single(inst.m_observed, k, cfg);
    const auto dbl = factorize_double(inst.m_observed, k, cfg);
    const auto large = factorize_double_large_k(inst.m_observed);
    for (const auto* sol : {&single, &dbl, &large}) {
      const double w = non_orthogonality(sol->materialized_w().matrix());
      if (w != 0.0) return {false, "W non-orthogonality " + fmt("%.3g", w) + " at trial " + std::to_string(trial)};
    }
    for (const auto* sol : {&dbl, &large}) {
      const double a = column_non_orthogonality(sol->a.matrix());
      if (a != 0.0) return {false, "A non-orthogonality " + fmt("%.3g", a) + " at trial " + std::to_string(trial)};
    }
    checked += 3;
  }
  return {true, std::to_string(checked) + " factorizations, all exactly 0"};
}

// --- 2 -----------------------------------------------------------------
Outcome planted_reconstruction() {
  const auto stat = planted_stat(20, 50, 0.5);
  double sum = 0.0;
  constexpr int kTrials = 200;
  for (int t = 0; t < kTrials; ++t) {
    const auto inst = gen_planted_single(20, 50, 5, 0.5, static_cast<std::uint64_t>(50000 + t));
    sum += (inst.m_observed.matrix() - inst.m_truth.matrix()).squaredNorm();
  }
  const double mean = sum / kTrials;
  const bool ok = std::abs(mean - stat.mean) <= 7.5;
  return {ok, fmt("sample mean %.3f, expected %.1f +- 7.5", mean, stat.mean)};
}

// --- 3 -----------------------------------------------------------------
Outcome single_factor_chain() {
  std::mt19937_64 gen(3003);
  std::vector<double> ratios;
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = testing::random_index(gen, 1, 5);
    const Index n = testing::random_index(gen, 1, 7);
    const Index k = testing::random_index(gen, 1, 3);
    const NonNegMatrix mat(testing::random_nonneg(m, n, gen, 0.25));
    const auto cfg = kmeans_config(50, static_cast<std::uint64_t>(trial));

    const auto pts = normalize_columns(mat);
    const double km = weighted_kmeans(pts, k, cfg).cost;
    const double km_best = oracle::brute_force_kmeans(pts, k).cost;
    const double r_emp = km_best > 0.0 ? km / km_best : 1.0;
    const double opt = oracle::brute_force_single(mat.matrix(), k).objective;
    const double alg = factorize_single(mat, k, cfg).objective;
    const double slack = 1e-9 * frobenius_norm_sq(mat.matrix());
    if (alg > 2.0 * r_emp * opt + slack) {
      return {false, fmt("trial objective %.6g exceeds 2 r_emp OPT = %.6g", alg, 2.0 * r_emp * opt)};
    }
    if (opt > slack) ratios.push_back(alg / opt);
  }
  const double worst = ratios.empty() ? 1.0 : *std::max_element(ratios.begin(), ratios.end());
  return {true, fmt("ratio to OPT: median %.4f, max %.4f", median(ratios), worst)};
}

// --- 4 -----------------------------------------------------------------
Outcome large_k_bound() {
  std::mt19937_64 gen(4004);
  std::vector<double> ratios;
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix m = testing::random_binary(4, 4, gen);
    const double opt = oracle::brute_force_double(m, 4);
    const double alg = factorize_double_large_k(NonNegMatrix(m)).objective;
    const double slack = 1e-9 * std::max(1.0, m.squaredNorm());
    if (alg > kLargeKRatio * opt + slack) {
      return {false, fmt("objective %.6g above bound %.6g", alg, kLargeKRatio * opt)};
    }
    if (opt > slack) ratios.push_back(alg / opt);
  }
  const double worst = ratios.empty() ? 1.0 : *std::max_element(ratios.begin(), ratios.end());
  return {true, fmt("max ratio %.4f (bound %.4f)", worst, kLargeKRatio)};
}

// --- 5 -----------------------------------------------------------------
Outcome rounding_bound() {
  std::mt19937_64 gen(5005);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index r = testing::random_index(gen, 1, 6);
    const Index c = testing::random_index(gen, 1, 6);
    const DenseMatrix block = testing::random_binary(r, c, gen);
    Vector a(r);
    Vector w(c);
    for (Index i = 0; i < r; ++i) a(i) = unit(gen) < 0.15 ? 0.0 : 1.5 * unit(gen);
    for (Index i = 0; i < c; ++i) w(i) = unit(gen) < 0.15 ? 0.0 : 1.5 * unit(gen);
    const auto rb = round_block(block, a, w);
    const double bin = (block - rb.a_hat * rb.w_hat.transpose()).squaredNorm();
    const double frac = (block - a * w.transpose()).squaredNorm();
    if (bin > 8.0 * frac) return {false, fmt("binary %.6g > 8 x fractional %.6g", bin, frac)};
    if (frac > 0.0) worst = std::max(worst, bin / frac);
  }
  return {true, fmt("max ratio %.4f", worst)};
}

// --- 6 -----------------------------------------------------------------
Outcome bcc_bound() {
  std::mt19937_64 gen(6006);
  std::vector<double> ratios;
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = testing::random_index(gen, 1, 6);
    const Index n = testing::random_index(gen, 1, 7 - m);
    const auto g = BipartiteLabeling::from_matrix(testing::random_binary(m, n, gen));
    const auto got = bcc_cluster(g).disagreements;
    const auto best = oracle::brute_force_bcc(g);
    if (got > 120 * best) {
      return {false, "disagreements " + std::to_string(got) + " vs optimum " + std::to_string(best)};
    }
    ratios.push_back(best > 0 ? static_cast<double>(got) / static_cast<double>(best) : 1.0);
  }
  return {true, fmt("median ratio %.4f, max %.4f", median(ratios),
                    *std::max_element(ratios.begin(), ratios.end()))};
}

// --- 7 -----------------------------------------------------------------
Outcome scaled_experiment() {
  SweepConfig cfg;
  cfg.m = 50;
  cfg.n = 500;
  cfg.k = 10;
  cfg.noise_grid = parse_noise_grid("0.1:1.0:0.1");
  cfg.trials = 7;
  cfg.seed = 7007;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());

  cfg.mode = PlantMode::Single;
  const auto rows = run_sweep(cfg);
  cfg.mode = PlantMode::Double;
  const auto rows_double = run_sweep(cfg);

  for (const auto* set : {&rows, &rows_double}) {
    for (const auto& r : *set) {
      if (r.max_non_orthogonality_w != 0.0 || r.max_non_orthogonality_a != 0.0) {
        return {false, fmt("non-orthogonality non-zero at noise %.1f", r.noise_level)};
      }
    }
  }
  for (const auto& r : rows) {
    if (r.median_reconstruction_error > r.median_planted_error) {
      return {false, fmt("reconstruction %.4f above planted %.4f", r.median_reconstruction_error,
                         r.median_planted_error)};
    }
  }
  int inversions = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double prev = rows[i - 1].median_recovery_error;
    const double cur = rows[i].median_recovery_error;
    if (cur < prev) {
      ++inversions;
      if (prev - cur > 0.02 * prev) return {false, fmt("recovery drops %.4f -> %.4f", prev, cur)};
    }
  }
  if (inversions > 1) return {false, std::to_string(inversions) + " inversions in recovery error"};
  return {true, fmt("recovery %.3f -> %.3f", rows.front().median_recovery_error,
                    rows.back().median_recovery_error) +
                    fmt(", recon/planted at 1.0: %.3f/%.3f", rows.back().median_reconstruction_error,
                        rows.back().median_planted_error) +
                    ", inversions " + std::to_string(inversions)};
}

// --- 8 -----------------------------------------------------------------
Outcome orthogonal_centroid_optimality() {
  std::mt19937_64 gen(8008);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index k = testing::random_index(gen, 1, 3);
    const Index dim = testing::random_index(gen, 1, 4);
    DenseMatrix c = testing::random_nonneg(k, dim, gen, 0.25);
    for (Index j = 0; j < k; ++j) {
      const double nrm = c.row(j).norm();
      if (nrm > 0.0) c.row(j) /= nrm;
    }
    std::vector<double> q;
    Grouping g;
    for (Index j = 0; j < k; ++j) {
      q.push_back(unit(gen) < 0.2 || c.row(j).norm() == 0.0 ? 0.0 : 0.1 + 4.0 * unit(gen));
      g.group.push_back(testing::random_index(gen, 0, k - 1));
    }
    g.count = k;
    const DenseMatrix a = solve_orthogonal_centroids(c, q, g);
    const double got = orthogonal_centroid_cost(c, q, g, a);
    const double best = oracle::exhaustive_orthogonal_centroids(c, q, g.group, k);
    worst = std::max(worst, std::abs(got - best));
    if (std::abs(got - best) > 1e-12) return {false, fmt("cost %.17g vs exhaustive %.17g", got, best)};
  }
  return {true, fmt("max |difference| %.3g", worst)};
}

// --- 9 -----------------------------------------------------------------
Outcome fact_properties() {
  constexpr int kSamples = 100000;
  constexpr double kRel = 1e-9;
  std::mt19937_64 gen(9009);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto gaussian = [&](Index d) {
    Vector v(d);
    for (Index i = 0; i < d; ++i) v[i] = normal(gen);
    return v;
  };
  auto nonneg = [&](Index d) {
    Vector v(d);
    for (Index i = 0; i < d; ++i) v[i] = unit(gen) < 0.2 ? 0.0 : unit(gen);
    return v;
  };

  int violations = 0;
  for (int s = 0; s < kSamples; ++s) {
    // Unit vector bound.
    const Vector y = nonneg(4);
    Vector x = nonneg(4);
    if (x.norm() == 0.0) x[0] = 1.0;
    x /= x.norm();
    const double theta = 3.0 * unit(gen);
    const Vector y_bar = y.norm() > 0.0 ? Vector(y / y.norm()) : Vector(Vector::Zero(4));
    if ((y - theta * x).squaredNorm() * (1 + kRel) < 0.5 * y.squaredNorm() * (y_bar - x).squaredNorm()) ++violations;

    // Doubled triangle.
    const Vector g1 = gaussian(4);
    const Vector g2 = gaussian(4);
    if ((g1 - g2).squaredNorm() > (2 * g1.squaredNorm() + 2 * g2.squaredNorm()) * (1 + kRel)) ++violations;

    // Non-negative triangle.
    const Vector p1 = nonneg(4);
    const Vector p2 = nonneg(4);
    if ((p1 - p2).squaredNorm() > (p1.squaredNorm() + p2.squaredNorm()) * (1 + kRel)) ++violations;

    // Center identity.
    const Index n = testing::random_index(gen, 1, 6);
    DenseMatrix pts(n, 3);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      pts.row(i) = gaussian(3).transpose();
      w[static_cast<std::size_t>(i)] = 0.01 + unit(gen);
    }
    const Vector b = gaussian(3);
    Vector mean = Vector::Zero(3);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      mean += w[static_cast<std::size_t>(i)] * pts.row(i).transpose();
      total += w[static_cast<std::size_t>(i)];
    }
    mean /= total;
    double lhs = 0.0;
    double rhs = total * (mean - b).squaredNorm();
    for (Index i = 0; i < n; ++i) {
      lhs += w[static_cast<std::size_t>(i)] * (pts.row(i).transpose() - b).squaredNorm();
      rhs += w[static_cast<std::size_t>(i)] * (pts.row(i).transpose() - mean).squaredNorm();
    }
    if (std::abs(lhs - rhs) > kRel * std::max(lhs, rhs)) ++violations;
  }
  return {violations == 0, std::to_string(4 * kSamples) + " samples, " + std::to_string(violations) +
                               " violations"};
}

// --- 10 ----------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs `args` in `dir` with ONMF_THREADS set; returns exit status.
int run_cli(const fs::path& dir, unsigned threads, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && ONMF_THREADS=" + std::to_string(threads) +
                          " '" + std::string(ONMF_CLI_PATH) + "' " + args + " > stdout.txt 2> stderr.txt";
  return std::system(cmd.c_str());
}

Outcome cli_determinism() {
  const fs::path root = fs::temp_directory_path() / ("onmf_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);

  const fs::path inputs = root / "inputs";
  fs::create_directories(inputs);
  {
    std::ofstream edges(inputs / "edges.txt");
    std::mt19937_64 gen(10010);
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 7; ++v)
        if (gen() % 3) edges << u << ',' << v << ',' << (gen() % 2 ? '+' : '-') << '\n';
  }
  if (run_cli(inputs, 1, "generate --m 12 --n 30 --k 3 --noise 0.2 --seed 7 --out-dir .") != 0) {
    return {false, "could not generate inputs"};
  }

  const std::string in = "'" + inputs.string() + "/";
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"generate", "generate --m 10 --n 20 --k 2 --noise 0.3 --seed 11 --mode double --out-dir out"},
      {"factorize-single", "factorize --input " + in + "M.csv' --k 3 --mode single --seed 5 --restarts 8 --out-a A.csv --out-w W.csv --no-timing"},
      {"factorize-double", "factorize --input " + in + "M.csv' --k 3 --mode double --seed 5 --restarts 8 --out-a A.csv --out-w W.csv --no-timing"},
      {"factorize-large-k", "factorize --input " + in + "M.csv' --mode double-large-k --out-a A.csv --out-w W.csv --no-timing"},
      {"evaluate", "evaluate --input " + in + "M.csv' --truth " + in + "Mtruth.csv' --a " + in + "Atruth.csv' --w " + in + "Wtruth.csv'"},
      {"sweep", "sweep --m 10 --n 40 --k 3 --noise-grid 0.1,0.5 --trials 3 --seed 4 --out sweep.csv --no-timing"},
      {"bcc", "bcc --edges " + in + "edges.txt' --complete --out clusters.csv"},
  };

  int compared = 0;
  for (const auto& [name, args] : commands) {
    std::vector<fs::path> dirs;
    const unsigned thread_counts[] = {1, 1, 4, 4};
    for (std::size_t r = 0; r < std::size(thread_counts); ++r) {
      const fs::path dir = root / (name + "_" + std::to_string(r));
      fs::create_directories(dir);
      if (run_cli(dir, thread_counts[r], args) != 0) {
        return {false, name + " exited non-zero: " + slurp(dir / "stderr.txt")};
      }
      dirs.push_back(dir);
    }
    for (const auto& entry : fs::recursive_directory_iterator(dirs[0])) {
      if (!entry.is_regular_file() || entry.path().filename() == "stderr.txt") continue;
      const auto rel = fs::relative(entry.path(), dirs[0]);
      const std::string reference = slurp(entry.path());
      for (std::size_t r = 1; r < dirs.size(); ++r) {
        if (slurp(dirs[r] / rel) != reference) {
          return {false, name + ": " + rel.string() + " differs between runs"};
        }
      }
      ++compared;
    }
  }
  fs::remove_all(root);
  return {true, std::to_string(commands.size()) + " commands x 4 runs, " + std::to_string(compared) +
                    " outputs byte-identical"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "orthogonality exactness", 30, orthogonality_exactness},
      {2, "planted reconstruction statistic", 5, planted_reconstruction},
      {3, "single-factor bound chain", 120, single_factor_chain},
      {4, "large-k double-factor bound", 120, large_k_bound},
      {5, "block rounding bound", 5, rounding_bound},
      {6, "correlation clustering bound", 60, bcc_bound},
      {7, "scaled noise sweep", 180, scaled_experiment},
      {8, "orthogonal centroid optimality", 10, orthogonal_centroid_optimality},
      {9, "inequality property suites", 10, fact_properties},
      {10, "CLI determinism", 30, cli_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = out.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s [%d] %s: %s (%.2fs of %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
