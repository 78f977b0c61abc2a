#pragma once

// Dense real square matrices, the cyclic Jacobi eigensolver and the
// functional calculus built on it.
//
// All arithmetic is carried out in `Real` (x87 extended precision on
// x86-64). Several of the inequalities checked by the suite are equalities
// in disguise (determinant identities, spectra of similar products) and are
// only observable at 1e-8 when ill-conditioned products such as
// B^{tp/2} A^{(1-t)p} B^{tp/2} are formed with more than 53 bits.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matmeans {

using Real = long double;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input outside the domain of an operation: asymmetric, not positive
/// definite, non-finite, log of a nonpositive eigenvalue.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, Real residual)
      : std::runtime_error(what), residual(residual) {}
  Real residual;
};

/// Dense n x n real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, Real fill = 0);
  Matrix(std::initializer_list<std::initializer_list<Real>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Real> d);
  static Matrix diagonal(std::initializer_list<Real> d);

  std::size_t dim() const { return n_; }

  Real& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  Real operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const Real> data() const { return data_; }

  Matrix transposed() const;
  Real trace() const;
  Real max_abs() const;
  Real frobenius() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Real s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Real> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, Real s);
Matrix operator*(Real s, Matrix a);

/// Exact triple-loop product. Throws DimensionError on mismatch.
Matrix multiply(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

/// Largest entrywise difference.
Real max_abs_diff(const Matrix& a, const Matrix& b);

/// Tolerance used for the symmetry invariant:
/// |x_ij - x_ji| <= 1e-12 * (1 + max|x|).
bool is_symmetric(const Matrix& m);

/// Real symmetric matrix. Construction from an arbitrary Matrix validates
/// symmetry and finiteness; `symmetrize` forces it with (X + X^T)/2.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);

  static SymMatrix symmetrize(const Matrix& m);

  std::size_t dim() const { return m_.dim(); }
  const Matrix& matrix() const { return m_; }
  operator const Matrix&() const { return m_; }  // NOLINT(google-explicit-constructor)
  Real operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 protected:
  struct Trusted {};
  SymMatrix(Trusted, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

/// Symmetric positive definite matrix. The public constructor checks that the
/// smallest eigenvalue exceeds n * 1e-13 * largest.
class PdMatrix : public SymMatrix {
 public:
  PdMatrix() = default;
  explicit PdMatrix(Matrix m);
  explicit PdMatrix(const SymMatrix& s);

  /// Wraps a matrix that is positive definite by construction (output of
  /// the functional calculus with a positive function). Symmetry is forced,
  /// definiteness is not rechecked.
  static PdMatrix assume(const Matrix& m);

 private:
  PdMatrix(Trusted t, Matrix m) : SymMatrix(t, std::move(m)) {}
};

/// Descending real vector: eigenvalues or singular values.
struct Spectrum {
  std::vector<Real> values;

  std::size_t size() const { return values.size(); }
  Real operator[](std::size_t i) const { return values[i]; }
};

struct EigenDecomposition {
  Matrix q;                  // columns are eigenvectors
  std::vector<Real> lambda;  // descending
};

/// Cyclic Jacobi. Converged when the off-diagonal Frobenius mass is at most
/// 1e-13 * ||s||_F and no remaining entry is large relative to its diagonal
/// pair; throws ConvergenceError after 50 sweeps otherwise.
EigenDecomposition sym_eigen(const SymMatrix& s);

/// q * diag(f(lambda)) * q^T, symmetrized. Throws DomainError if f is not
/// finite on the spectrum.
SymMatrix apply_spectral_fn(const EigenDecomposition& e, const std::function<Real(Real)>& f);
SymMatrix apply_spectral_fn(const SymMatrix& s, const std::function<Real(Real)>& f);

/// A^p for any real p; p = 0 gives I and p = 1 returns `a` unchanged.
PdMatrix pd_power(const PdMatrix& a, Real p);
PdMatrix pd_power(const EigenDecomposition& e, Real p);

SymMatrix pd_log(const PdMatrix& a);
PdMatrix sym_exp(const SymMatrix& h);

/// Square roots of the eigenvalues of x^T x, clamped at 0.
Spectrum singular_values(const Matrix& x);

/// For symmetric input the singular values are the sorted |lambda|; this
/// avoids squaring the condition number.
Spectrum singular_values(const SymMatrix& s);

struct DefinitenessCheck {
  bool ok = false;
  Real margin = 0;  // smallest eigenvalue
};

/// PSD test: lambda_min > -1e-9 * (1 + max|lambda|).
DefinitenessCheck is_positive_semidefinite(const SymMatrix& s);

/// Strict test with the PdMatrix threshold lambda_min > n * 1e-13 * lambda_max.
DefinitenessCheck is_positive_definite(const SymMatrix& s);

/// Q diag(lambda) Q^T with Q from Householder QR of a standard normal matrix
/// and lambda log-uniform in [10^-c, 10^c]. Entries are rounded to double so
/// that the 17-digit text format reproduces the matrix exactly.
PdMatrix random_pd(std::size_t n, double cond_exponent, std::uint64_t seed);

/// Symmetric matrix with standard normal entries (rounded to double).
SymMatrix random_symmetric(std::size_t n, std::uint64_t seed);

/// Haar-distributed orthogonal matrix from the same construction.
Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

/// SplitMix64 step; used to derive independent sub-seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace matmeans
