#include "onmf/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace onmf {

namespace {

DenseMatrix residual(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& w) {
  if (a.cols() != w.rows() || a.rows() != m.rows() || w.cols() != m.cols()) {
    throw std::invalid_argument("shape mismatch: M is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", A is " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()) + ", W is " +
                                std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  }
  return m - a * w;
}

}  // namespace

double recovery_error(const DenseMatrix& m_truth, const DenseMatrix& a, const DenseMatrix& w) {
  return residual(m_truth, a, w).norm();
}

double reconstruction_error(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& w) {
  return residual(m, a, w).norm();
}

double non_orthogonality(const DenseMatrix& w) {
  std::vector<Index> kept;
  for (Index r = 0; r < w.rows(); ++r) {
    if (!(w.row(r).array() == 0.0).all()) kept.push_back(r);
  }
  if (kept.empty()) return 0.0;

  // Normalized rows have unit norm, so the diagonal of W~ W~^T - I is zero by
  // construction; the off-diagonal entries are the pairwise cosines.
  double sum_sq = 0.0;
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto wr = w.row(kept[r]);
    for (std::size_t s = r + 1; s < kept.size(); ++s) {
      const auto ws = w.row(kept[s]);
      const double c = wr.dot(ws) / (wr.norm() * ws.norm());
      sum_sq += 2.0 * c * c;
    }
  }
  return std::sqrt(sum_sq);
}

double column_non_orthogonality(const DenseMatrix& a) {
  return non_orthogonality(DenseMatrix(a.transpose()));
}

double rsfe(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& w) {
  const double denom = m.squaredNorm();
  if (denom == 0.0) throw std::domain_error("rsfe: ||M||_F is zero");
  return residual(m, a, w).squaredNorm() / denom;
}

PlantedStat planted_stat(Index m, Index n, double noise_level) {
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  const double s2 = noise_level * noise_level;
  return {2.0 * mn * s2, std::sqrt(20.0 * mn) * s2};
}

}  // namespace onmf
