#pragma once

#include <cstdint>
#include <vector>

#include "onmf/matrix.hpp"
#include "onmf/rng.hpp"

namespace onmf {

struct KMeansConfig {
  int restarts = 10;
  int max_iters = 100;
  double rel_tol = 1e-9;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // restarts run concurrently when > 1

  void validate() const;  // throws std::invalid_argument
};

/// Centroids are the rows of `centroids`; assignment[i] is the 0-based
/// centroid of point i; cost = sum_i w_i ||p_i - c_{assignment[i]}||^2.
struct KMeansSolution {
  DenseMatrix centroids;
  std::vector<Index> assignment;
  double cost = 0.0;
  int iterations = 0;
  std::vector<double> cost_history;  // cost after each recentering
};

/// Weighted cost of a fixed (centroids, assignment) pair.
double kmeans_cost(const WeightedPointSet& pts, const DenseMatrix& centroids,
                   const std::vector<Index>& assignment);

/// Nearest centroid for every point; ties go to the smallest index.
std::vector<Index> assign_nearest(const WeightedPointSet& pts, const DenseMatrix& centroids);

/// Weighted k-means++ seeding.  The first centroid is drawn with probability
/// proportional to w_i, each later one proportional to w_i * D(p_i)^2.  If
/// every remaining w_i * D^2 is zero the draw falls back to w_i alone.  With
/// zero total weight all k centroids are the zero vector.
DenseMatrix kmeanspp_seed(const WeightedPointSet& pts, Index k, SeededRng& rng);

/// Weighted Lloyd iterations from the given centroids.  Stops when the
/// relative cost improvement drops below rel_tol, the assignment stops
/// changing, or max_iters recenterings have run.  Clusters with zero total
/// weight keep their centroid.  On return, every positive-weight cluster's
/// centroid is the weighted mean of its points.
KMeansSolution lloyd(const WeightedPointSet& pts, DenseMatrix centroids,
                     const KMeansConfig& config);

/// Best of config.restarts runs of kmeanspp_seed + lloyd.  Restart r uses
/// SeededRng(derive_seed(config.seed, r)); the minimum-cost run wins, ties to
/// the lowest restart index, so the result is the same for any thread count.
KMeansSolution weighted_kmeans(const WeightedPointSet& pts, Index k,
                               const KMeansConfig& config);

}  // namespace onmf
