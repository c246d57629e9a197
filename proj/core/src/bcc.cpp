#include "onmf/bcc.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "onmf/csv.hpp"
#include "onmf/onmf_double.hpp"

namespace onmf {

BipartiteLabeling BipartiteLabeling::from_matrix(const DenseMatrix& m) {
  BipartiteLabeling g(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v != 0.0 && v != 1.0) throw std::invalid_argument("labeling matrix must be 0/1");
      g.set(i, j, v == 1.0);
    }
  }
  return g;
}

DenseMatrix BipartiteLabeling::to_matrix() const {
  DenseMatrix m(m_, n_);
  for (Index i = 0; i < m_; ++i)
    for (Index j = 0; j < n_; ++j) m(i, j) = plus(i, j) ? 1.0 : 0.0;
  return m;
}

RoundedBlock round_block(const DenseMatrix& block, const Vector& a, const Vector& w) {
  const Index rows = block.rows();
  const Index cols = block.cols();
  if (a.size() != rows || w.size() != cols) throw std::invalid_argument("round_block: shape mismatch");
  if ((a.array() < 0.0).any() || (w.array() < 0.0).any()) {
    throw std::invalid_argument("round_block: a and w must be non-negative");
  }
  if (((block.array() != 0.0) && (block.array() != 1.0)).any()) {
    throw std::invalid_argument("round_block: block must be binary");
  }

  RoundedBlock out{Vector::Zero(rows), Vector::Zero(cols)};

  Index best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < cols; ++i) {
    if (!(w(i) > 0.0)) continue;
    const double d = (block.col(i) / w(i) - a).squaredNorm();
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (best < 0) return out;

  out.a_hat = block.col(best);
  const double support = out.a_hat.sum();
  for (Index i = 0; i < cols; ++i) {
    if (!(w(i) > 0.0)) continue;
    if (support == 0.0) {
      out.w_hat(i) = 1.0;
      continue;
    }
    const double covered = block.col(i).dot(out.a_hat);
    out.w_hat(i) = 2.0 * covered >= support ? 1.0 : 0.0;
  }
  return out;
}

std::int64_t disagreements(const BipartiteLabeling& g, const Clustering& c) {
  if (static_cast<Index>(c.row_cluster.size()) != g.rows() ||
      static_cast<Index>(c.col_cluster.size()) != g.cols()) {
    throw std::invalid_argument("disagreements: clustering size mismatch");
  }
  std::int64_t count = 0;
  for (Index i = 0; i < g.rows(); ++i) {
    const Index ci = c.row_cluster[static_cast<std::size_t>(i)];
    for (Index j = 0; j < g.cols(); ++j) {
      const bool together = ci != 0 && ci == c.col_cluster[static_cast<std::size_t>(j)];
      if (g.plus(i, j) != together) ++count;
    }
  }
  return count;
}

BccResult bcc_cluster(const BipartiteLabeling& g) {
  BccResult result;
  result.clustering.row_cluster.assign(static_cast<std::size_t>(g.rows()), 0);
  result.clustering.col_cluster.assign(static_cast<std::size_t>(g.cols()), 0);
  result.binary_product = DenseMatrix::Zero(g.rows(), g.cols());
  if (g.rows() == 0 || g.cols() == 0) return result;

  const NonNegMatrix m(g.to_matrix());
  const OnmfSolution frac = factorize_double_large_k(m);
  result.fractional_objective = frac.objective;
  const DenseMatrix& a = frac.a.matrix();

  Index next_id = 1;
  for (Index s = 0; s < frac.w.k; ++s) {
    std::vector<Index> rows;
    std::vector<Index> cols;
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, s) > 0.0) rows.push_back(i);
    for (Index j = 0; j < frac.w.cols(); ++j) {
      const auto idx = static_cast<std::size_t>(j);
      if (frac.w.group[idx] == s && frac.w.theta[idx] > 0.0) cols.push_back(j);
    }
    if (rows.empty() || cols.empty()) continue;

    const auto r = static_cast<Index>(rows.size());
    const auto c = static_cast<Index>(cols.size());
    DenseMatrix block(r, c);
    Vector av(r);
    Vector wv(c);
    for (Index x = 0; x < r; ++x) {
      av(x) = a(rows[static_cast<std::size_t>(x)], s);
      for (Index y = 0; y < c; ++y) {
        block(x, y) = m.matrix()(rows[static_cast<std::size_t>(x)], cols[static_cast<std::size_t>(y)]);
      }
    }
    for (Index y = 0; y < c; ++y) wv(y) = frac.w.theta[static_cast<std::size_t>(cols[static_cast<std::size_t>(y)])];

    const RoundedBlock rb = round_block(block, av, wv);
    if (rb.a_hat.sum() == 0.0 || rb.w_hat.sum() == 0.0) continue;

    const Index id = next_id++;
    for (Index x = 0; x < r; ++x) {
      if (rb.a_hat(x) == 0.0) continue;
      const Index row = rows[static_cast<std::size_t>(x)];
      result.clustering.row_cluster[static_cast<std::size_t>(row)] = id;
      for (Index y = 0; y < c; ++y) {
        if (rb.w_hat(y) != 0.0) result.binary_product(row, cols[static_cast<std::size_t>(y)]) = 1.0;
      }
    }
    for (Index y = 0; y < c; ++y) {
      if (rb.w_hat(y) != 0.0) result.clustering.col_cluster[static_cast<std::size_t>(cols[static_cast<std::size_t>(y)])] = id;
    }
  }

  result.disagreements = disagreements(g, result.clustering);
  return result;
}

namespace {

Index parse_index(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
    throw ParseError("bad vertex index '" + std::string(s) + "'", line);
  }
  return static_cast<Index>(v);
}

}  // namespace

BipartiteLabeling read_edge_list(std::istream& in, bool complete, Index rows, Index cols) {
  std::vector<std::tuple<Index, Index, bool, std::size_t>> edges;
  std::string line;
  std::size_t line_no = 0;
  Index max_u = -1;
  Index max_v = -1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;

    const auto c1 = view.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw ParseError("expected 'u,v,+' or 'u,v,-'", line_no);
    const Index u = parse_index(view.substr(0, c1), line_no);
    const Index v = parse_index(view.substr(c1 + 1, c2 - c1 - 1), line_no);
    std::string_view label = view.substr(c2 + 1);
    while (!label.empty() && label.front() == ' ') label.remove_prefix(1);
    if (label != "+" && label != "-") {
      throw ParseError("edge label must be '+' or '-', got '" + std::string(label) + "'", line_no);
    }
    edges.emplace_back(u, v, label == "+", line_no);
    max_u = std::max(max_u, u);
    max_v = std::max(max_v, v);
  }

  const Index m = rows > 0 ? rows : max_u + 1;
  const Index n = cols > 0 ? cols : max_v + 1;
  if (m <= 0 || n <= 0) throw ParseError("edge list is empty", 0);

  BipartiteLabeling g(m, n);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(m * n), 0);
  for (const auto& [u, v, plus, at] : edges) {
    if (u >= m || v >= n) throw ParseError("vertex index out of range", at);
    auto& mark = seen[static_cast<std::size_t>(u * n + v)];
    if (mark != 0 && g.plus(u, v) != plus) throw ParseError("conflicting labels for edge", at);
    mark = 1;
    g.set(u, v, plus);
  }
  if (!complete) {
    for (Index u = 0; u < m; ++u)
      for (Index v = 0; v < n; ++v)
        if (seen[static_cast<std::size_t>(u * n + v)] == 0) {
          throw ParseError("missing edge (" + std::to_string(u) + "," + std::to_string(v) +
                               "); pass --complete to treat missing pairs as '-'",
                           0);
        }
  }
  return g;
}

BipartiteLabeling read_edge_list(const std::filesystem::path& path, bool complete, Index rows,
                                 Index cols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_edge_list(in, complete, rows, cols);
}

void write_clustering(std::ostream& out, const Clustering& c) {
  out << "side,index,cluster\n";
  for (std::size_t i = 0; i < c.row_cluster.size(); ++i) out << "u," << i << ',' << c.row_cluster[i] << '\n';
  for (std::size_t j = 0; j < c.col_cluster.size(); ++j) out << "v," << j << ',' << c.col_cluster[j] << '\n';
}

}  // namespace onmf
