#include "matmeans/compound.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <string>

namespace matmeans {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CompoundIndex::CompoundIndex(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (k < 1 || k > n) {
    throw DomainError("compound: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) +
                      "]");
  }
  subsets_.reserve(binomial(n, k));
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    subsets_.push_back(cur);
    // advance to the next subset in lexicographic order
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

Real determinant(Matrix m) {
  const std::size_t n = m.dim();
  Real det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m(r, c)) > std::fabs(m(piv, c))) piv = r;
    if (m(piv, c) == 0) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Real f = m(r, c) / m(c, c);
      for (std::size_t j = c + 1; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

Matrix compound_matrix(const Matrix& x, std::size_t k) {
  const CompoundIndex idx(x.dim(), k);
  if (k == 1) return x;
  Matrix c(idx.size());
  Matrix minor(k);
  for (std::size_t I = 0; I < idx.size(); ++I)
    for (std::size_t J = 0; J < idx.size(); ++J) {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) minor(a, b) = x(idx[I][a], idx[J][b]);
      c(I, J) = determinant(minor);
    }
  return c;
}

CompoundSpectrumCheck compound_spectrum_check(const SymMatrix& s, std::size_t k) {
  const CompoundIndex idx(s.dim(), k);
  const auto lambda = sym_eigen(s).lambda;

  CompoundSpectrumCheck out;
  for (const auto& subset : idx.subsets()) {
    Real prod = 1;
    for (std::size_t i : subset) prod *= lambda[i];
    out.expected.values.push_back(prod);
  }
  std::sort(out.expected.values.begin(), out.expected.values.end(), std::greater<>());
  out.compound_spectrum = Spectrum{
      sym_eigen(SymMatrix::symmetrize(compound_matrix(s, k))).lambda};

  // Products far below the spectral radius are compared against a floor of
  // 1e-6 * radius instead of their own magnitude.
  Real scale = 0;
  for (Real v : out.expected.values) scale = std::max(scale, std::fabs(v));
  const Real floor = std::max(scale * 1e-6L, LDBL_MIN);
  for (std::size_t i = 0; i < out.expected.size(); ++i) {
    const Real err = std::fabs(out.compound_spectrum[i] - out.expected[i]);
    out.max_rel_error = std::max(out.max_rel_error, err / std::max(std::fabs(out.expected[i]), floor));
  }
  out.ok = out.max_rel_error <= 1e-7L;
  return out;
}

}  // namespace matmeans
