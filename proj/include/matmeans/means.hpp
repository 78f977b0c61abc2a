#pragma once

// Two-variable and multi-variable means of positive definite matrices.
//
// Every two-variable mean takes a weight t in [0, 1] on the second argument.
// At the endpoints t = 0 and t = 1 each mean returns its argument unchanged;
// the functional-calculus round trip is skipped so that equality cases in the
// inequality suite are exact.

#include <span>
#include <vector>

#include "matmeans/densela.hpp"

namespace matmeans {

/// Nonnegative weights summing to one (within 1e-12).
class WeightVector {
 public:
  explicit WeightVector(std::vector<Real> alphas);
  static WeightVector uniform(std::size_t m);

  std::size_t size() const { return alphas_.size(); }
  Real operator[](std::size_t i) const { return alphas_[i]; }
  std::span<const Real> values() const { return alphas_; }

 private:
  std::vector<Real> alphas_;
};

/// A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
PdMatrix geometric_mean(const PdMatrix& a, const PdMatrix& b, Real t);

/// exp((1 - t) log A + t log B).
PdMatrix log_euclidean(const PdMatrix& a, const PdMatrix& b, Real t);

/// ((1 - t) A^p + t B^p)^{1/p}; p = 0 is the log-Euclidean limit.
PdMatrix power_mean(const PdMatrix& a, const PdMatrix& b, Real t, Real p);

/// (1 - t) A + t B.
PdMatrix arithmetic_path(const PdMatrix& a, const PdMatrix& b, Real t);

/// (B^{tp/2} A^{(1-t)p} B^{tp/2})^{1/p}, p > 0.
PdMatrix sandwich_mean(const PdMatrix& a, const PdMatrix& b, Real t, Real p);

/// B^{tp/2} A^{(1-t)p} B^{tp/2} before the 1/p root. Its spectrum is that of
/// A^{(1-t)p} B^{tp}.
PdMatrix sandwich_core(const PdMatrix& a, const PdMatrix& b, Real t, Real p);

/// A^{1-t} B^t. Not symmetric in general.
Matrix cross_term(const PdMatrix& a, const PdMatrix& b, Real t);

/// (X + X^T) / 2.
SymMatrix hermitian_part(const Matrix& x);

/// (sum_i alpha_i A_i^p)^{1/p}; p = 0 gives exp(sum_i alpha_i log A_i).
PdMatrix power_mean_multi(std::span<const PdMatrix> mats, const WeightVector& w, Real p);

/// exp(sum_i alpha_i log A_i).
PdMatrix log_euclidean_multi(std::span<const PdMatrix> mats, const WeightVector& w);

/// U = A^{-1/2} (A #_{1/2} B) B^{-1/2}, the orthogonal factor in
/// A #_{1/2} B = A^{1/2} U B^{1/2}.
Matrix geometric_mean_unitary_factor(const PdMatrix& a, const PdMatrix& b);

}  // namespace matmeans
