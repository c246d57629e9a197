#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace onmf {

using Index = Eigen::Index;

/// Dense real matrix, row-major.  Every matrix in the library (inputs,
/// factors, residuals) is one of these.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Builds a matrix from nested braces, e.g. make_matrix({{1, 2}, {3, 4}}).
/// Throws std::invalid_argument on ragged rows.
DenseMatrix make_matrix(std::initializer_list<std::initializer_list<double>> rows);

/// A dense matrix whose entries are all finite and >= 0.  The check runs once
/// on construction; the wrapped matrix is immutable afterwards.
class NonNegMatrix {
 public:
  NonNegMatrix() = default;
  explicit NonNegMatrix(DenseMatrix m);

  const DenseMatrix& matrix() const noexcept { return m_; }
  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }

  NonNegMatrix transposed() const;

 private:
  DenseMatrix m_;
};

/// Points with non-negative weights.  Row i of `points` is point i.  When built
/// by normalize_columns() every point has unit L2 norm or is exactly zero, and
/// zero points carry zero weight.
struct WeightedPointSet {
  DenseMatrix points;
  std::vector<double> weights;

  Index size() const noexcept { return points.rows(); }
  Index dim() const noexcept { return points.cols(); }
  double total_weight() const;
};

/// W with at most one non-zero per column: column i is theta[i] * e_{group[i]}.
/// Groups are 0-based.
struct CompactW {
  Index k = 0;
  std::vector<Index> group;
  std::vector<double> theta;

  Index cols() const noexcept { return static_cast<Index>(group.size()); }
};

double frobenius_norm_sq(const DenseMatrix& m);

/// Column i becomes m_i / ||m_i|| (or zero), weighted by ||m_i||^2.
WeightedPointSet normalize_columns(const NonNegMatrix& m);

/// Cosine of the angle between two non-zero vectors, clamped to [0, 1].
/// Throws std::invalid_argument if either vector is zero or sizes differ.
double cosine(std::span<const double> x, std::span<const double> y);

/// Angle in [0, pi/2] between two non-zero non-negative vectors.
double angle(std::span<const double> x, std::span<const double> y);

/// k x n matrix with entry (group[i], i) = theta[i].  Throws std::out_of_range
/// on a bad group index and std::invalid_argument on negative theta.
NonNegMatrix materialize_w(const CompactW& w);

inline std::span<const double> row_span(const DenseMatrix& m, Index r) {
  return {m.data() + r * m.cols(), static_cast<std::size_t>(m.cols())};
}

inline std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace onmf
