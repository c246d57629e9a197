#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "onmf/kmeans.hpp"
#include "onmf/matrix.hpp"
#include "onmf/onmf_single.hpp"

namespace onmf {

// Angle thresholds of the weight-reduction band [pi/6, pi/3], as cosines.
inline constexpr double kCosPiOver3 = 0.5;
inline constexpr double kCosPiOver6 = 0.86602540378443864676;  // sqrt(3)/2
// sin^2(pi/12) = (2 - sqrt(3)) / 4
inline constexpr double kSinSqPiOver12 = 0.066987298107780676618;
inline constexpr double kLargeKRatio = 1.0 / kSinSqPiOver12;  // ~14.93

/// Raised by group_centroids when angles computed in floating point do not
/// split cleanly into groups (a pair landed on the wrong side of a threshold).
class GroupingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Step 1 output: centroids (rows) recentred on their clusters, and the
/// total point weight q_j of each cluster.
struct CentroidWeights {
  DenseMatrix centroids;
  std::vector<double> q;
};

/// group[j] is the 0-based group of centroid j; groups are numbered
/// 0..count-1 in order of their lowest-indexed positive-weight member.
struct Grouping {
  std::vector<Index> group;
  Index count = 0;
};

CentroidWeights centroid_weights(const WeightedPointSet& pts, const KMeansSolution& sol);

/// One lexicographic pass over pairs j1 < j2.  When both reduced weights are
/// positive and cos(c_j1, c_j2) lies in [1/2, sqrt(3)/2] (inclusive), both
/// weights drop by the smaller one.  Afterwards no pair of positive-weight
/// centroids has its angle inside [pi/6, pi/3].
std::vector<double> weight_reduction(const DenseMatrix& centroids, std::span<const double> q);

/// Connected components over positive-weight centroids, linking pairs with
/// angle < pi/6.  Verifies that every cross-group pair has angle > pi/3 and
/// every same-group pair angle < pi/6, throwing GroupingError otherwise.
/// Zero-weight centroids join the group of the angularly nearest
/// positive-weight centroid (ties to the smaller index); zero-vector
/// centroids join the first group.
Grouping group_centroids(const DenseMatrix& centroids, std::span<const double> q_reduced);

/// Optimal non-negative, pairwise-orthogonal a_0..a_{k-1} (rows of the result)
/// for  min sum_{j: q'_j > 0} q'_j ||c_j - a_{group(j)}||^2.
/// Solved per coordinate: with group totals q*_s and weighted means mu_{s,h},
/// coordinate h goes to the group maximizing q*_s mu_{s,h}^2 (ties to the
/// lowest group) and is set to mu_{s,h}; all other groups get 0 there.
DenseMatrix solve_orthogonal_centroids(const DenseMatrix& centroids,
                                       std::span<const double> q_reduced,
                                       const Grouping& grouping);

/// Objective of the orthogonal-centroid problem for candidate rows `a`.
double orthogonal_centroid_cost(const DenseMatrix& centroids, std::span<const double> q_reduced,
                                const Grouping& grouping, const DenseMatrix& a);

/// Everything the double-factor pipeline computed, for inspection in tests.
struct DoubleTrace {
  CentroidWeights weights;
  std::vector<double> q_reduced;
  Grouping grouping;
  DenseMatrix orthogonal_centroids;  // k x m
  std::vector<Index> assignment;     // column -> centroid
};

/// Double-factor ONMF (columns of A and rows of W orthogonal) with inner
/// dimension k, using weighted k-means for the initial clustering.
OnmfSolution factorize_double(const NonNegMatrix& m, Index k, const KMeansConfig& config,
                              DoubleTrace* trace = nullptr);

/// Double-factor ONMF with k = min(m, n).  Transposes when m < n, then uses
/// every normalized column as its own centroid (weight = squared norm) and
/// runs weight reduction, grouping, and the orthogonal-centroid solve.  The
/// result is transposed back.  At most 1/sin^2(pi/12) times the optimum.
OnmfSolution factorize_double_large_k(const NonNegMatrix& m, DoubleTrace* trace = nullptr);

}  // namespace onmf
