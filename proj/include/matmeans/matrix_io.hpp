#pragma once

// Plain-text matrix format: first line is n, then n lines of n
// whitespace-separated decimal numbers. Parsing and printing never consult
// the C locale.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "matmeans/densela.hpp"

namespace matmeans {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Matrix parse_matrix(std::string_view text);
Matrix read_matrix_file(const std::filesystem::path& path);

/// 17 significant digits, so any double-valued matrix round-trips exactly.
std::string format_matrix(const Matrix& m);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

/// Locale-independent shortest/fixed-precision rendering of one value.
std::string format_real(Real x, int significant_digits = 17);

}  // namespace matmeans
