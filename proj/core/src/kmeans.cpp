#include "onmf/kmeans.hpp"

#include <limits>
#include <stdexcept>

#include "onmf/parallel.hpp"

namespace onmf {

namespace {

double dist_sq(const DenseMatrix& a, Index i, const DenseMatrix& b, Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

// Samples index i with probability mass[i] / sum(mass).  Requires sum > 0.
Index sample_proportional(const std::vector<double>& mass, double total, SeededRng& rng) {
  const double target = rng.uniform() * total;
  double acc = 0.0;
  Index last_positive = -1;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    acc += mass[i];
    last_positive = static_cast<Index>(i);
    if (target < acc) return last_positive;
  }
  // rounding in the running sum
  return last_positive;
}

void recenter(const WeightedPointSet& pts, const std::vector<Index>& assignment,
              DenseMatrix& centroids) {
  const Index k = centroids.rows();
  DenseMatrix sums = DenseMatrix::Zero(k, pts.dim());
  std::vector<double> mass(static_cast<std::size_t>(k), 0.0);
  for (Index i = 0; i < pts.size(); ++i) {
    const double w = pts.weights[static_cast<std::size_t>(i)];
    if (w <= 0.0) continue;
    const Index j = assignment[static_cast<std::size_t>(i)];
    sums.row(j) += w * pts.points.row(i);
    mass[static_cast<std::size_t>(j)] += w;
  }
  for (Index j = 0; j < k; ++j) {
    const double q = mass[static_cast<std::size_t>(j)];
    if (q > 0.0) centroids.row(j) = sums.row(j) / q;
  }
}

}  // namespace

void KMeansConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(rel_tol >= 0.0)) throw std::invalid_argument("rel_tol must be >= 0");
}

double kmeans_cost(const WeightedPointSet& pts, const DenseMatrix& centroids,
                   const std::vector<Index>& assignment) {
  double cost = 0.0;
  for (Index i = 0; i < pts.size(); ++i) {
    const double w = pts.weights[static_cast<std::size_t>(i)];
    if (w == 0.0) continue;
    cost += w * dist_sq(pts.points, i, centroids, assignment[static_cast<std::size_t>(i)]);
  }
  return cost;
}

std::vector<Index> assign_nearest(const WeightedPointSet& pts, const DenseMatrix& centroids) {
  std::vector<Index> out(static_cast<std::size_t>(pts.size()), 0);
  for (Index i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Index best_j = 0;
    for (Index j = 0; j < centroids.rows(); ++j) {
      const double d = dist_sq(pts.points, i, centroids, j);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    out[static_cast<std::size_t>(i)] = best_j;
  }
  return out;
}

DenseMatrix kmeanspp_seed(const WeightedPointSet& pts, Index k, SeededRng& rng) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  DenseMatrix centroids = DenseMatrix::Zero(k, pts.dim());
  const double total = pts.total_weight();
  if (!(total > 0.0)) return centroids;

  const auto n = static_cast<std::size_t>(pts.size());
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<double> mass(n);

  Index chosen = sample_proportional(pts.weights, total, rng);
  centroids.row(0) = pts.points.row(chosen);
  for (Index j = 1; j < k; ++j) {
    double mass_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = dist_sq(pts.points, static_cast<Index>(i), centroids, j - 1);
      if (d < nearest[i]) nearest[i] = d;
      mass[i] = pts.weights[i] * nearest[i];
      mass_total += mass[i];
    }
    chosen = mass_total > 0.0 ? sample_proportional(mass, mass_total, rng)
                              : sample_proportional(pts.weights, total, rng);
    centroids.row(j) = pts.points.row(chosen);
  }
  return centroids;
}

KMeansSolution lloyd(const WeightedPointSet& pts, DenseMatrix centroids,
                     const KMeansConfig& config) {
  config.validate();
  if (static_cast<Index>(pts.weights.size()) != pts.size()) {
    throw std::invalid_argument("lloyd: weights/points size mismatch");
  }
  if (!centroids.allFinite()) throw std::invalid_argument("lloyd: non-finite centroid");

  KMeansSolution sol;
  sol.assignment = assign_nearest(pts, centroids);
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= config.max_iters; ++it) {
    recenter(pts, sol.assignment, centroids);
    const double cost = kmeans_cost(pts, centroids, sol.assignment);
    sol.cost_history.push_back(cost);
    sol.iterations = it;
    if (cost == 0.0 || (it > 1 && prev - cost <= config.rel_tol * prev)) break;
    if (it == config.max_iters) break;
    prev = cost;

    auto next = assign_nearest(pts, centroids);
    if (next == sol.assignment) break;
    sol.assignment = std::move(next);
  }
  sol.centroids = std::move(centroids);
  sol.cost = kmeans_cost(pts, sol.centroids, sol.assignment);
  return sol;
}

KMeansSolution weighted_kmeans(const WeightedPointSet& pts, Index k,
                               const KMeansConfig& config) {
  config.validate();
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  const auto restarts = static_cast<std::size_t>(config.restarts);
  std::vector<KMeansSolution> runs(restarts);
  parallel_for(restarts, config.threads, [&](std::size_t r) {
    SeededRng rng(derive_seed(config.seed, r));
    runs[r] = lloyd(pts, kmeanspp_seed(pts, k, rng), config);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (runs[r].cost < runs[best].cost) best = r;
  }
  return std::move(runs[best]);
}

}  // namespace onmf
