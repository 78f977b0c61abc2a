#pragma once

// Antisymmetric tensor powers (k-th compound matrices).
//
// Rows and columns of the k-th compound are indexed by the k-element subsets
// of {0, ..., n-1} in lexicographic order: for n = 4, k = 2 the order is
// {0,1} {0,2} {0,3} {1,2} {1,3} {2,3}.

#include <cstddef>
#include <vector>

#include "matmeans/densela.hpp"

namespace matmeans {

/// The C(n, k) subsets, each strictly increasing, in lexicographic order.
class CompoundIndex {
 public:
  CompoundIndex(std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return subsets_.size(); }
  const std::vector<std::size_t>& operator[](std::size_t i) const { return subsets_[i]; }
  const std::vector<std::vector<std::size_t>>& subsets() const { return subsets_; }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<std::vector<std::size_t>> subsets_;
};

std::size_t binomial(std::size_t n, std::size_t k);

/// LU with partial pivoting.
Real determinant(Matrix m);

/// (I, J) entry is det x[I, J]. Throws DomainError unless 1 <= k <= n.
Matrix compound_matrix(const Matrix& x, std::size_t k);

struct CompoundSpectrumCheck {
  bool ok = false;
  Real max_rel_error = 0;
  Spectrum compound_spectrum;  // eigenvalues of the compound
  Spectrum expected;           // all k-fold products, descending
};

/// Compares the spectrum of the k-th compound of s against the k-fold
/// products of eigenvalues of s, each within 1e-7 relative.
CompoundSpectrumCheck compound_spectrum_check(const SymMatrix& s, std::size_t k);

}  // namespace matmeans
