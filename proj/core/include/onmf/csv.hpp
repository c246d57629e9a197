#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "onmf/matrix.hpp"

namespace onmf {

/// Malformed input file.  `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct CsvOptions {
  bool header = false;  // skip the first line on read
};

// One row per line, comma separated.  Values are written in shortest
// round-trip form, so read(write(m)) == m bit for bit.
DenseMatrix parse_matrix(std::string_view text, const CsvOptions& opts = {});
DenseMatrix read_matrix(std::istream& in, const CsvOptions& opts = {});
DenseMatrix read_matrix(const std::filesystem::path& path, const CsvOptions& opts = {});

void write_matrix(std::ostream& out, const DenseMatrix& m);
void write_matrix(const std::filesystem::path& path, const DenseMatrix& m);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace onmf
