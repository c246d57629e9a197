#include "onmf/onmf_double.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace onmf {

namespace {

bool in_band(double cos) { return cos >= kCosPiOver3 && cos <= kCosPiOver6; }

struct DisjointSets {
  std::vector<Index> parent;
  explicit DisjointSets(Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Index{0});
  }
  Index find(Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // keep the smaller index as root
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

// Steps 2 and 3 plus the scale fit, shared by both entry points.
OnmfSolution finish(const NonNegMatrix& m, CentroidWeights cw, std::vector<Index> assignment,
                    DoubleTrace* trace) {
  const Index k = cw.centroids.rows();
  std::vector<double> q_reduced = weight_reduction(cw.centroids, cw.q);
  Grouping grouping = group_centroids(cw.centroids, q_reduced);
  DenseMatrix a_rows = solve_orthogonal_centroids(cw.centroids, q_reduced, grouping);

  DenseMatrix a = a_rows.transpose();
  CompactW w;
  w.k = k;
  w.group.resize(static_cast<std::size_t>(m.cols()));
  w.theta.resize(static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.cols(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Index g = grouping.group[static_cast<std::size_t>(assignment[idx])];
    w.group[idx] = g;
    w.theta[idx] = best_scale(m.matrix(), i, a, g);
  }

  OnmfSolution sol{NonNegMatrix(std::move(a)), std::move(w), 0.0};
  sol.objective = onmf_objective(m, sol.a, sol.w);

  if (trace != nullptr) {
    trace->weights = std::move(cw);
    trace->q_reduced = std::move(q_reduced);
    trace->grouping = std::move(grouping);
    trace->orthogonal_centroids = std::move(a_rows);
    trace->assignment = std::move(assignment);
  }
  return sol;
}

OnmfSolution large_k_tall(const NonNegMatrix& m, DoubleTrace* trace) {
  const WeightedPointSet pts = normalize_columns(m);
  CentroidWeights cw{pts.points, pts.weights};
  std::vector<Index> identity(static_cast<std::size_t>(m.cols()));
  std::iota(identity.begin(), identity.end(), Index{0});
  return finish(m, std::move(cw), std::move(identity), trace);
}

}  // namespace

CentroidWeights centroid_weights(const WeightedPointSet& pts, const KMeansSolution& sol) {
  const Index k = sol.centroids.rows();
  CentroidWeights out;
  out.centroids = sol.centroids;
  out.q.assign(static_cast<std::size_t>(k), 0.0);
  DenseMatrix sums = DenseMatrix::Zero(k, pts.dim());
  for (Index i = 0; i < pts.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Index j = sol.assignment[idx];
    out.q[static_cast<std::size_t>(j)] += pts.weights[idx];
    sums.row(j) += pts.weights[idx] * pts.points.row(i);
  }
  for (Index j = 0; j < k; ++j) {
    const double q = out.q[static_cast<std::size_t>(j)];
    if (q > 0.0) out.centroids.row(j) = sums.row(j) / q;
  }
  return out;
}

std::vector<double> weight_reduction(const DenseMatrix& centroids, std::span<const double> q) {
  const Index k = centroids.rows();
  if (static_cast<Index>(q.size()) != k) {
    throw std::invalid_argument("weight_reduction: weight count does not match centroids");
  }
  std::vector<double> reduced(q.begin(), q.end());
  auto weight = [&](Index j) -> double& { return reduced[static_cast<std::size_t>(j)]; };

  for (Index j1 = 0; j1 < k; ++j1) {
    for (Index j2 = j1 + 1; j2 < k; ++j2) {
      if (!(weight(j1) > 0.0 && weight(j2) > 0.0)) continue;
      if (!in_band(cosine(row_span(centroids, j1), row_span(centroids, j2)))) continue;
      const double d = std::min(weight(j1), weight(j2));
      weight(j1) -= d;
      weight(j2) -= d;
    }
  }

  for (Index j1 = 0; j1 < k; ++j1) {
    for (Index j2 = j1 + 1; j2 < k; ++j2) {
      if (weight(j1) > 0.0 && weight(j2) > 0.0 &&
          in_band(cosine(row_span(centroids, j1), row_span(centroids, j2)))) {
        throw std::logic_error("weight_reduction: band not empty after reduction");
      }
    }
  }
  return reduced;
}

Grouping group_centroids(const DenseMatrix& centroids, std::span<const double> q_reduced) {
  const Index k = centroids.rows();
  if (static_cast<Index>(q_reduced.size()) != k) {
    throw std::invalid_argument("group_centroids: weight count does not match centroids");
  }
  auto positive = [&](Index j) { return q_reduced[static_cast<std::size_t>(j)] > 0.0; };
  auto cos_of = [&](Index a, Index b) {
    return cosine(row_span(centroids, a), row_span(centroids, b));
  };

  DisjointSets sets(k);
  for (Index j1 = 0; j1 < k; ++j1) {
    if (!positive(j1)) continue;
    for (Index j2 = j1 + 1; j2 < k; ++j2) {
      if (positive(j2) && cos_of(j1, j2) > kCosPiOver6) sets.unite(j1, j2);
    }
  }

  Grouping out;
  out.group.assign(static_cast<std::size_t>(k), 0);
  std::vector<Index> label_of_root(static_cast<std::size_t>(k), -1);
  for (Index j = 0; j < k; ++j) {
    if (!positive(j)) continue;
    auto& label = label_of_root[static_cast<std::size_t>(sets.find(j))];
    if (label < 0) label = out.count++;
    out.group[static_cast<std::size_t>(j)] = label;
  }

  for (Index j1 = 0; j1 < k; ++j1) {
    if (!positive(j1)) continue;
    for (Index j2 = j1 + 1; j2 < k; ++j2) {
      if (!positive(j2)) continue;
      const double c = cos_of(j1, j2);
      const bool same = out.group[static_cast<std::size_t>(j1)] ==
                        out.group[static_cast<std::size_t>(j2)];
      if (same ? !(c > kCosPiOver6) : !(c < kCosPiOver3)) {
        throw GroupingError("centroids " + std::to_string(j1) + " and " + std::to_string(j2) +
                            " violate the grouping angle thresholds (cos = " +
                            std::to_string(c) + ")");
      }
    }
  }

  for (Index j = 0; j < k; ++j) {
    if (positive(j) || out.count == 0) continue;
    if (centroids.row(j).squaredNorm() == 0.0) continue;  // stays in group 0
    double best_cos = -1.0;
    Index best = -1;
    for (Index p = 0; p < k; ++p) {
      if (!positive(p)) continue;
      const double c = cos_of(j, p);
      if (c > best_cos) {
        best_cos = c;
        best = p;
      }
    }
    out.group[static_cast<std::size_t>(j)] = out.group[static_cast<std::size_t>(best)];
  }
  return out;
}

DenseMatrix solve_orthogonal_centroids(const DenseMatrix& centroids,
                                       std::span<const double> q_reduced,
                                       const Grouping& grouping) {
  const Index k = centroids.rows();
  const Index dim = centroids.cols();
  std::vector<double> q_star(static_cast<std::size_t>(k), 0.0);
  DenseMatrix sums = DenseMatrix::Zero(k, dim);
  for (Index j = 0; j < k; ++j) {
    const double q = q_reduced[static_cast<std::size_t>(j)];
    if (!(q > 0.0)) continue;
    const Index s = grouping.group[static_cast<std::size_t>(j)];
    q_star[static_cast<std::size_t>(s)] += q;
    sums.row(s) += q * centroids.row(j);
  }

  DenseMatrix mu = DenseMatrix::Zero(k, dim);
  for (Index s = 0; s < k; ++s) {
    const double total = q_star[static_cast<std::size_t>(s)];
    if (total > 0.0) mu.row(s) = sums.row(s) / total;
  }

  DenseMatrix a = DenseMatrix::Zero(k, dim);
  for (Index h = 0; h < dim; ++h) {
    Index best = -1;
    double best_score = -1.0;
    for (Index s = 0; s < k; ++s) {
      const double total = q_star[static_cast<std::size_t>(s)];
      if (!(total > 0.0)) continue;
      const double score = total * mu(s, h) * mu(s, h);
      if (score > best_score) {
        best_score = score;
        best = s;
      }
    }
    if (best >= 0) a(best, h) = mu(best, h);
  }
  return a;
}

double orthogonal_centroid_cost(const DenseMatrix& centroids, std::span<const double> q_reduced,
                                const Grouping& grouping, const DenseMatrix& a) {
  double cost = 0.0;
  for (Index j = 0; j < centroids.rows(); ++j) {
    const double q = q_reduced[static_cast<std::size_t>(j)];
    if (!(q > 0.0)) continue;
    cost += q * (centroids.row(j) - a.row(grouping.group[static_cast<std::size_t>(j)]))
                    .squaredNorm();
  }
  return cost;
}

OnmfSolution factorize_double(const NonNegMatrix& m, Index k, const KMeansConfig& config,
                              DoubleTrace* trace) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const WeightedPointSet pts = normalize_columns(m);
  KMeansSolution km = weighted_kmeans(pts, k, config);
  CentroidWeights cw = centroid_weights(pts, km);
  return finish(m, std::move(cw), std::move(km.assignment), trace);
}

OnmfSolution factorize_double_large_k(const NonNegMatrix& m, DoubleTrace* trace) {
  if (m.rows() >= m.cols()) return large_k_tall(m, trace);

  // Solve on M^T = W^T A^T and swap the factors back.
  const OnmfSolution t = large_k_tall(m.transposed(), trace);
  const Index k = t.w.k;

  // New A (m x k) is the transposed compact W.
  DenseMatrix a = t.materialized_w().matrix().transpose();

  // New W (k x n) is the transposed A, whose columns have disjoint supports,
  // so each of its columns holds at most one non-zero.
  CompactW w;
  w.k = k;
  w.group.assign(static_cast<std::size_t>(m.cols()), 0);
  w.theta.assign(static_cast<std::size_t>(m.cols()), 0.0);
  const DenseMatrix& at = t.a.matrix();
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index s = 0; s < k; ++s) {
      if (at(j, s) != 0.0) {
        w.group[static_cast<std::size_t>(j)] = s;
        w.theta[static_cast<std::size_t>(j)] = at(j, s);
        break;
      }
    }
  }

  OnmfSolution sol{NonNegMatrix(std::move(a)), std::move(w), 0.0};
  sol.objective = onmf_objective(m, sol.a, sol.w);
  return sol;
}

}  // namespace onmf
