#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "onmf/matrix.hpp"
#include "onmf/onmf_single.hpp"

namespace onmf {

/// Complete bipartite graph U x V with every edge labelled '+' or '-'.
class BipartiteLabeling {
 public:
  BipartiteLabeling() = default;
  BipartiteLabeling(Index m, Index n) : m_(m), n_(n), plus_(static_cast<std::size_t>(m * n), 0) {}

  /// Entry (i, j) == 1 means edge (u_i, v_j) is '+'.  Throws on non-binary.
  static BipartiteLabeling from_matrix(const DenseMatrix& m);

  Index rows() const noexcept { return m_; }
  Index cols() const noexcept { return n_; }
  bool plus(Index i, Index j) const { return plus_[static_cast<std::size_t>(i * n_ + j)] != 0; }
  void set(Index i, Index j, bool is_plus) {
    plus_[static_cast<std::size_t>(i * n_ + j)] = is_plus ? 1 : 0;
  }

  DenseMatrix to_matrix() const;

 private:
  Index m_ = 0;
  Index n_ = 0;
  std::vector<std::uint8_t> plus_;
};

/// Cluster id per vertex on each side.  Id 0 means unclustered (a singleton);
/// vertices sharing a positive id form one cluster.
struct Clustering {
  std::vector<Index> row_cluster;
  std::vector<Index> col_cluster;
};

struct RoundedBlock {
  Vector a_hat;  // 0/1 entries
  Vector w_hat;  // 0/1 entries
};

/// Rounds a fractional rank-1 fit a * w^T of a binary block to binary vectors
/// with ||M - a_hat w_hat^T||^2 <= 8 ||M - a w^T||^2.
///
/// a_hat is the column m_i* minimizing ||m_i / w_i - a||^2 over w_i > 0 (ties to
/// the smallest i).  With S = support(a_hat), w_hat_i = 1 iff w_i > 0 and m_i
/// covers at least half of S.  If S is empty, w_hat is the indicator of
/// w > 0.  If w == 0, both outputs are zero.
RoundedBlock round_block(const DenseMatrix& block, const Vector& a, const Vector& w);

/// Number of '+' edges not inside a common cluster plus '-' edges inside one.
std::int64_t disagreements(const BipartiteLabeling& g, const Clustering& c);

struct BccResult {
  Clustering clustering;
  std::int64_t disagreements = 0;
  double fractional_objective = 0.0;  // ||M - A W||^2 before rounding
  DenseMatrix binary_product;         // A_bin W_bin
};

/// Correlation clustering via large-k double-factor ONMF: factorize the 0/1
/// matrix with k = min(m, n), round every block (support of a_s x support of
/// row s of W) with round_block, and turn each block whose rounded vectors are
/// both non-zero into one cluster.  Within 120x of the optimum.
BccResult bcc_cluster(const BipartiteLabeling& g);

/// Edge list reader: one `u,v,+` or `u,v,-` per line, 0-based indices.  Sizes
/// default to max index + 1 (rows/cols > 0 override).  Missing pairs are an
/// error unless `complete` is set, in which case they become '-'.  Errors are
/// ParseError with the offending line number.
BipartiteLabeling read_edge_list(std::istream& in, bool complete, Index rows = 0,
                                 Index cols = 0);
BipartiteLabeling read_edge_list(const std::filesystem::path& path, bool complete,
                                 Index rows = 0, Index cols = 0);

/// `side,index,cluster` rows (side is u or v) under a header line.
void write_clustering(std::ostream& out, const Clustering& c);

}  // namespace onmf
