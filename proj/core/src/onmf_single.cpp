#include "onmf/onmf_single.hpp"

#include <algorithm>
#include <stdexcept>

namespace onmf {

DenseMatrix OnmfSolution::product() const { return a.matrix() * materialized_w().matrix(); }

double onmf_objective(const NonNegMatrix& m, const NonNegMatrix& a, const CompactW& w) {
  const DenseMatrix& mm = m.matrix();
  const DenseMatrix& am = a.matrix();
  if (am.rows() != mm.rows() || am.cols() != w.k || w.cols() != mm.cols()) {
    throw std::invalid_argument("onmf_objective: shape mismatch");
  }
  double total = 0.0;
  for (Index i = 0; i < mm.cols(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    total += (mm.col(i) - w.theta[idx] * am.col(w.group[idx])).squaredNorm();
  }
  return total;
}

double best_scale(const DenseMatrix& m, Index column, const DenseMatrix& a, Index a_column) {
  const double norm_sq = a.col(a_column).squaredNorm();
  if (norm_sq == 0.0) return 0.0;
  return std::max(0.0, m.col(column).dot(a.col(a_column)) / norm_sq);
}

OnmfSolution factorize_single(const NonNegMatrix& m, Index k, const KMeansConfig& config) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const WeightedPointSet pts = normalize_columns(m);
  const KMeansSolution km = weighted_kmeans(pts, k, config);

  DenseMatrix a = km.centroids.transpose().cwiseMax(0.0);

  CompactW w;
  w.k = k;
  w.group.resize(static_cast<std::size_t>(m.cols()));
  w.theta.resize(static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.cols(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (pts.weights[idx] == 0.0) {
      w.group[idx] = 0;
      w.theta[idx] = 0.0;
      continue;
    }
    w.group[idx] = km.assignment[idx];
    w.theta[idx] = best_scale(m.matrix(), i, a, w.group[idx]);
  }

  OnmfSolution sol{NonNegMatrix(std::move(a)), std::move(w), 0.0};
  sol.objective = onmf_objective(m, sol.a, sol.w);
  return sol;
}

}  // namespace onmf
