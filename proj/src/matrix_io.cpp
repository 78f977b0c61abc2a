#include "matmeans/matrix_io.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace matmeans {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  // trailing blank lines are allowed
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos)
    lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
  // from_chars rejects a leading '+'
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid number '" +
                     std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) + ": non-finite value");
  }
  return value;
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty matrix file");
  const auto header = split_fields(lines[0]);
  if (header.size() != 1) throw ParseError("line 1: expected the dimension n");
  std::size_t n = 0;
  const auto [ptr, ec] =
      std::from_chars(header[0].data(), header[0].data() + header[0].size(), n);
  if (ec != std::errc() || ptr != header[0].data() + header[0].size() || n == 0) {
    throw ParseError("line 1: dimension must be a positive integer");
  }
  if (lines.size() != n + 1) {
    throw ParseError("expected " + std::to_string(n) + " matrix rows, found " +
                     std::to_string(lines.size() - 1));
  }
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto fields = split_fields(lines[i + 1]);
    if (fields.size() != n) {
      throw ParseError("line " + std::to_string(i + 2) + ": expected " + std::to_string(n) +
                       " values, found " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_number(fields[j], i + 2);
  }
  return m;
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_real(Real x, int significant_digits) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<double>(x),
                                       std::chars_format::general, significant_digits);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format_matrix(const Matrix& m) {
  std::string out = std::to_string(m.dim()) + "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out += ' ';
      out += format_real(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_matrix(m);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace matmeans
