#include "onmf/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace onmf {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t line) {
  cell = trim(cell);
  if (cell.empty()) throw ParseError("empty cell", line);
  // from_chars rejects a leading '+'
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw ParseError("non-numeric cell '" + std::string(cell) + "'", line);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite value '" + std::string(cell) + "'", line);
  }
  return value;
}

}  // namespace

DenseMatrix parse_matrix(std::string_view text, const CsvOptions& opts) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::size_t line_no = 0;
  bool skipped_header = !opts.header;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    if (trim(line).empty()) continue;

    Index count = 0;
    while (true) {
      const auto comma = line.find(',');
      values.push_back(parse_cell(line.substr(0, comma), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (cols < 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError("ragged row: expected " + std::to_string(cols) + " values, got " +
                           std::to_string(count),
                       line_no);
    }
    ++rows;
  }

  if (rows == 0) return DenseMatrix(0, 0);
  DenseMatrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data());
  return m;
}

DenseMatrix read_matrix(std::istream& in, const CsvOptions& opts) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str(), opts);
}

DenseMatrix read_matrix(const std::filesystem::path& path, const CsvOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_matrix(in, opts);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_matrix(out, m);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace onmf
