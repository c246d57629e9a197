#include "onmf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace onmf {

DenseMatrix make_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n_rows = static_cast<Index>(rows.size());
  const auto n_cols = n_rows == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  DenseMatrix m(n_rows, n_cols);
  Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n_cols) {
      throw std::invalid_argument("make_matrix: ragged row " + std::to_string(r));
    }
    Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

NonNegMatrix::NonNegMatrix(DenseMatrix m) : m_(std::move(m)) {
  for (Index r = 0; r < m_.rows(); ++r) {
    for (Index c = 0; c < m_.cols(); ++c) {
      const double v = m_(r, c);
      if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite entry at (" + std::to_string(r) + ", " +
                                    std::to_string(c) + ")");
      }
      if (v < 0.0) {
        throw std::invalid_argument("negative entry at (" + std::to_string(r) + ", " +
                                    std::to_string(c) + ")");
      }
    }
  }
}

NonNegMatrix NonNegMatrix::transposed() const {
  return NonNegMatrix(DenseMatrix(m_.transpose()));
}

double WeightedPointSet::total_weight() const {
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

double frobenius_norm_sq(const DenseMatrix& m) { return m.squaredNorm(); }

WeightedPointSet normalize_columns(const NonNegMatrix& m) {
  const DenseMatrix& src = m.matrix();
  WeightedPointSet out;
  out.points = DenseMatrix::Zero(src.cols(), src.rows());
  out.weights.assign(static_cast<std::size_t>(src.cols()), 0.0);
  for (Index i = 0; i < src.cols(); ++i) {
    const double norm_sq = src.col(i).squaredNorm();
    out.weights[static_cast<std::size_t>(i)] = norm_sq;
    if (norm_sq > 0.0) {
      out.points.row(i) = src.col(i).transpose() / std::sqrt(norm_sq);
    }
  }
  return out;
}

double cosine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("cosine: size mismatch");
  double dot = 0.0;
  double xx = 0.0;
  double yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  if (xx == 0.0 || yy == 0.0) throw std::invalid_argument("cosine: zero vector");
  return std::clamp(dot / (std::sqrt(xx) * std::sqrt(yy)), 0.0, 1.0);
}

double angle(std::span<const double> x, std::span<const double> y) {
  return std::acos(cosine(x, y));
}

NonNegMatrix materialize_w(const CompactW& w) {
  if (w.theta.size() != w.group.size()) {
    throw std::invalid_argument("materialize_w: group/theta length mismatch");
  }
  DenseMatrix out = DenseMatrix::Zero(w.k, w.cols());
  for (Index i = 0; i < w.cols(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Index g = w.group[idx];
    if (g < 0 || g >= w.k) {
      throw std::out_of_range("materialize_w: group index " + std::to_string(g) +
                              " out of range for k = " + std::to_string(w.k));
    }
    out(g, i) = w.theta[idx];
  }
  return NonNegMatrix(std::move(out));
}

}  // namespace onmf
