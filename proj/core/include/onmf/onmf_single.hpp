#pragma once

#include "onmf/kmeans.hpp"
#include "onmf/matrix.hpp"

namespace onmf {

/// M ~= A * W with W in compact form.  Rows of W always have disjoint
/// supports.  Double-factor results additionally give A columns with disjoint
/// supports.  `objective` is ||M - A W||_F^2 recomputed from the factors.
struct OnmfSolution {
  NonNegMatrix a;  // m x k
  CompactW w;      // k x n
  double objective = 0.0;

  NonNegMatrix materialized_w() const { return materialize_w(w); }
  DenseMatrix product() const;
};

/// ||M - A W||_F^2 without materializing W.
double onmf_objective(const NonNegMatrix& m, const NonNegMatrix& a, const CompactW& w);

/// theta minimizing ||column - theta * v||^2 over theta >= 0; 0 when v == 0.
double best_scale(const DenseMatrix& m, Index column, const DenseMatrix& a, Index a_column);

/// Single-factor ONMF (rows of W orthogonal).  Normalizes the columns of M,
/// clusters them with weighted k-means, clamps the centroids to be
/// non-negative and uses them as the columns of A, then fits each column's
/// scale in closed form.  Zero columns of M get group 0 and scale 0.
/// Within a factor 2r of optimal when the k-means step is r-approximate.
OnmfSolution factorize_single(const NonNegMatrix& m, Index k, const KMeansConfig& config);

}  // namespace onmf
