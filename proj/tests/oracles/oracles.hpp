#pragma once

// Exhaustive reference solvers.  They share only the data types with the
// library and recompute everything from definitions, so they can be used to
// check the library's answers.

#include <cstdint>
#include <vector>

#include "onmf/bcc.hpp"
#include "onmf/kmeans.hpp"
#include "onmf/matrix.hpp"
#include "onmf/onmf_double.hpp"

namespace onmf::oracle {

/// Largest squared singular value of a non-negative matrix by power
/// iteration on B^T B (at most 1000 steps, stops when the Rayleigh quotient
/// changes by < 1e-12 relative).  Iterates are kept non-negative.
double top_singular_sq(const DenseMatrix& b);

/// Exact weighted k-means optimum by enumerating all k^n assignments with
/// weighted-mean centroids.  Throws if k^n > 1e7.
KMeansSolution brute_force_kmeans(const WeightedPointSet& pts, Index k);

struct SingleOptimum {
  double objective = 0.0;
  std::vector<Index> assignment;
};

/// Exact single-factor optimum: for every column->group assignment, each
/// group's best rank-1 fit costs ||B_s||^2 - sigma_1(B_s)^2.  Throws if
/// k^n > 1e6.
SingleOptimum brute_force_single(const DenseMatrix& m, Index k);

/// Exact double-factor optimum over assignments of rows and columns to
/// {unused, 1..k}: off-block entries count fully, each block (R_s, C_s) costs
/// its best rank-1 error.  Requires m, n <= 5.
double brute_force_double(const DenseMatrix& m, Index k);

/// Minimum disagreements over every partition of U + V.  Requires m + n <= 8.
std::int64_t brute_force_bcc(const BipartiteLabeling& g);

/// Minimum of sum_{q'_j > 0} q'_j ||c_j - a_group(j)||^2 over every way of
/// giving each coordinate to one group (k^dim choices), with the owner's value
/// at that coordinate chosen optimally by a 1-D weighted least squares.
double exhaustive_orthogonal_centroids(const DenseMatrix& centroids,
                                       const std::vector<double>& q_reduced,
                                       const std::vector<Index>& group, Index k);

}  // namespace onmf::oracle
