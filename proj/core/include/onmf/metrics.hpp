#pragma once

#include "onmf/matrix.hpp"

namespace onmf {

/// ||M_truth - A W||_F.  Throws std::invalid_argument on shape mismatch.
double recovery_error(const DenseMatrix& m_truth, const DenseMatrix& a, const DenseMatrix& w);

/// ||M - A W||_F.
double reconstruction_error(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& w);

/// ||W~ W~^T - I||_F where W~ is W with exactly-zero rows dropped and the
/// remaining rows scaled to unit length.  0 when no row survives.
double non_orthogonality(const DenseMatrix& w);

/// Same measure applied to the columns of A (i.e. to A^T).
double column_non_orthogonality(const DenseMatrix& a);

/// ||M - A W||_F^2 / ||M||_F^2.  Throws std::domain_error when M == 0.
double rsfe(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& w);

struct PlantedStat {
  double mean = 0.0;
  double sd = 0.0;
};

/// Mean and standard deviation of ||M - M_truth||_F^2 when every entry gets
/// iid Exp(noise_level) noise: (2 m n s^2, sqrt(20 m n) s^2).
PlantedStat planted_stat(Index m, Index n, double noise_level);

}  // namespace onmf
