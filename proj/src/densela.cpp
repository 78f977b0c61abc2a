#include "matmeans/densela.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace matmeans {

Matrix::Matrix(std::size_t n, Real fill) : n_(n), data_(n * n, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Real>> rows) : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("Matrix: rows must have length n");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(std::span<const Real> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<Real> d) {
  return diagonal(std::span<const Real>(d.begin(), d.size()));
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Real Matrix::trace() const {
  Real s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

Real Matrix::max_abs() const {
  Real m = 0;
  for (Real x : data_) m = std::max(m, std::fabs(x));
  return m;
}

Real Matrix::frobenius() const {
  // scaled to avoid overflow on extreme inputs
  const Real scale = max_abs();
  if (scale == 0) return 0;
  Real s = 0;
  for (Real x : data_) s += (x / scale) * (x / scale);
  return scale * std::sqrt(s);
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](Real x) { return std::isfinite(x); });
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.n_ != n_) throw DimensionError("matrix sum: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.n_ != n_) throw DimensionError("matrix difference: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Real s) {
  for (Real& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, Real s) { return a *= s; }
Matrix operator*(Real s, Matrix a) { return a *= s; }

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) {
    throw DimensionError("multiply: dimension mismatch (" + std::to_string(n) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Real aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Real max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  Real m = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  return m;
}

bool is_symmetric(const Matrix& m) {
  const Real tol = 1e-12L * (1 + m.max_abs());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i + 1; j < m.dim(); ++j)
      if (std::fabs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) throw DimensionError("SymMatrix: dimension must be positive");
  if (!m_.all_finite()) throw DomainError("SymMatrix: non-finite entry");
  if (!is_symmetric(m_)) throw DomainError("SymMatrix: matrix is not symmetric");
}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
  Matrix s(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) s(i, j) = (m(i, j) + m(j, i)) / 2;
  return SymMatrix(Trusted{}, std::move(s));
}

namespace {

bool pd_threshold_ok(const std::vector<Real>& lambda) {
  const Real n = static_cast<Real>(lambda.size());
  return lambda.back() > n * 1e-13L * lambda.front() && lambda.back() > 0;
}

}  // namespace

PdMatrix::PdMatrix(Matrix m) : PdMatrix(SymMatrix(std::move(m))) {}

PdMatrix::PdMatrix(const SymMatrix& s) : SymMatrix(s) {
  const auto e = sym_eigen(s);
  if (!pd_threshold_ok(e.lambda)) {
    std::ostringstream os;
    os << "PdMatrix: not positive definite (lambda_min=" << static_cast<double>(e.lambda.back())
       << ", lambda_max=" << static_cast<double>(e.lambda.front()) << ")";
    throw DomainError(os.str());
  }
}

PdMatrix PdMatrix::assume(const Matrix& m) {
  return PdMatrix(Trusted{}, SymMatrix::symmetrize(m).matrix());
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxSweeps = 50;
constexpr Real kOffTolerance = 1e-13L;

Real off_diagonal_mass(const Matrix& a) {
  Real s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Rotation in the (p, q) plane that annihilates a(p, q).
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.dim();
  const Real apq = a(p, q);
  const Real theta = (a(q, q) - a(p, p)) / (2 * apq);
  Real t;
  if (std::fabs(theta) > 1e30L) {
    t = 1 / (2 * theta);
  } else {
    t = 1 / (std::fabs(theta) + std::sqrt(theta * theta + 1));
    if (theta < 0) t = -t;
  }
  const Real c = 1 / std::sqrt(t * t + 1);
  const Real s = t * c;
  const Real tau = s / (1 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const Real g = a(r, p);
    const Real h = a(r, q);
    a(r, p) = a(p, r) = g - s * (h + g * tau);
    a(r, q) = a(q, r) = h + s * (g - h * tau);
  }
  for (std::size_t r = 0; r < n; ++r) {
    const Real g = v(r, p);
    const Real h = v(r, q);
    v(r, p) = g - s * (h + g * tau);
    v(r, q) = h + s * (g - h * tau);
  }
}

}  // namespace

EigenDecomposition sym_eigen(const SymMatrix& s) {
  const std::size_t n = s.dim();
  Matrix a = s.matrix();
  Matrix v = Matrix::identity(n);
  const Real norm = a.frobenius();

  // An entry is negligible once it is small relative to the geometric mean of
  // its diagonal pair; this keeps small eigenvalues accurate in a relative
  // sense, which the Frobenius criterion alone does not.
  const Real rel = LDBL_EPSILON;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Real apq = std::fabs(a(p, q));
        if (apq == 0) continue;
        if (apq <= rel * std::sqrt(std::fabs(a(p, p)) * std::fabs(a(q, q))) || apq < LDBL_MIN) {
          a(p, q) = a(q, p) = 0;
          continue;
        }
        rotate(a, v, p, q);
        ++rotations;
      }
    converged = rotations == 0;
  }
  const Real residual = off_diagonal_mass(a);
  if (!converged && residual > kOffTolerance * norm) {
    throw ConvergenceError("sym_eigen: no convergence after 50 sweeps", residual);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition e{Matrix(n), std::vector<Real>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    e.lambda[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) e.q(r, k) = v(r, order[k]);
  }
  return e;
}

SymMatrix apply_spectral_fn(const EigenDecomposition& e, const std::function<Real(Real)>& f) {
  const std::size_t n = e.lambda.size();
  std::vector<Real> fl(n);
  for (std::size_t k = 0; k < n; ++k) {
    fl[k] = f(e.lambda[k]);
    if (!std::isfinite(fl[k])) {
      std::ostringstream os;
      os << "apply_spectral_fn: function not finite at eigenvalue "
         << static_cast<double>(e.lambda[k]);
      throw DomainError(os.str());
    }
  }
  Matrix x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Real s = 0;
      for (std::size_t k = 0; k < n; ++k) s += e.q(i, k) * fl[k] * e.q(j, k);
      x(i, j) = x(j, i) = s;
    }
  return SymMatrix::symmetrize(x);
}

SymMatrix apply_spectral_fn(const SymMatrix& s, const std::function<Real(Real)>& f) {
  return apply_spectral_fn(sym_eigen(s), f);
}

namespace {

void require_positive_spectrum(const EigenDecomposition& e, const char* what) {
  if (e.lambda.back() <= 0) {
    std::ostringstream os;
    os << what << ": matrix is not positive definite (lambda_min="
       << static_cast<double>(e.lambda.back()) << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

PdMatrix pd_power(const EigenDecomposition& e, Real p) {
  require_positive_spectrum(e, "pd_power");
  if (p == 0) return PdMatrix::assume(Matrix::identity(e.lambda.size()));
  return PdMatrix::assume(apply_spectral_fn(e, [p](Real x) { return std::pow(x, p); }));
}

PdMatrix pd_power(const PdMatrix& a, Real p) {
  if (p == 1) return a;
  if (p == 0) return PdMatrix::assume(Matrix::identity(a.dim()));
  return pd_power(sym_eigen(a), p);
}

SymMatrix pd_log(const PdMatrix& a) {
  const auto e = sym_eigen(a);
  require_positive_spectrum(e, "pd_log");
  return apply_spectral_fn(e, [](Real x) { return std::log(x); });
}

PdMatrix sym_exp(const SymMatrix& h) {
  return PdMatrix::assume(apply_spectral_fn(h, [](Real x) { return std::exp(x); }));
}

Spectrum singular_values(const Matrix& x) {
  if (!x.all_finite()) throw DomainError("singular_values: non-finite entry");
  const auto gram = SymMatrix::symmetrize(multiply(x.transposed(), x));
  const auto e = sym_eigen(gram);
  Spectrum s;
  s.values.reserve(e.lambda.size());
  for (Real l : e.lambda) s.values.push_back(std::sqrt(std::max(l, Real{0})));
  return s;
}

Spectrum singular_values(const SymMatrix& m) {
  const auto e = sym_eigen(m);
  Spectrum s;
  for (Real l : e.lambda) s.values.push_back(std::fabs(l));
  std::stable_sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

DefinitenessCheck is_positive_semidefinite(const SymMatrix& s) {
  const auto e = sym_eigen(s);
  const Real largest = std::max(std::fabs(e.lambda.front()), std::fabs(e.lambda.back()));
  return {e.lambda.back() > -1e-9L * (1 + largest), e.lambda.back()};
}

DefinitenessCheck is_positive_definite(const SymMatrix& s) {
  const auto e = sym_eigen(s);
  return {pd_threshold_ok(e.lambda), e.lambda.back()};
}

// ---------------------------------------------------------------------------

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Householder QR of a standard normal matrix, with the sign of diag(R)
// folded into Q so the result is Haar distributed.
Matrix orthogonal_from(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = normal(rng);

  Matrix q = Matrix::identity(n);
  std::vector<Real> v(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Real norm = 0;
    for (std::size_t i = k; i < n; ++i) norm += g(i, k) * g(i, k);
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    const Real alpha = g(k, k) > 0 ? -norm : norm;
    std::fill(v.begin(), v.end(), Real{0});
    for (std::size_t i = k; i < n; ++i) v[i] = g(i, k);
    v[k] -= alpha;
    Real vv = 0;
    for (std::size_t i = k; i < n; ++i) vv += v[i] * v[i];
    if (vv == 0) continue;
    // G <- H G, Q <- Q H with H = I - 2 v v^T / (v^T v)
    for (std::size_t j = 0; j < n; ++j) {
      Real d = 0;
      for (std::size_t i = k; i < n; ++i) d += v[i] * g(i, j);
      d *= 2 / vv;
      for (std::size_t i = k; i < n; ++i) g(i, j) -= d * v[i];
    }
    for (std::size_t r = 0; r < n; ++r) {
      Real d = 0;
      for (std::size_t i = k; i < n; ++i) d += q(r, i) * v[i];
      d *= 2 / vv;
      for (std::size_t i = k; i < n; ++i) q(r, i) -= d * v[i];
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (g(j, j) < 0)
      for (std::size_t r = 0; r < n; ++r) q(r, j) = -q(r, j);
  return q;
}

Matrix round_to_double(const Matrix& m) {
  Matrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      r(i, j) = static_cast<double>(m(i, j));
  return r;
}

}  // namespace

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DimensionError("random_orthogonal: n must be positive");
  std::mt19937_64 rng(seed);
  return orthogonal_from(rng, n);
}

PdMatrix random_pd(std::size_t n, double cond_exponent, std::uint64_t seed) {
  if (n == 0) throw DimensionError("random_pd: n must be positive");
  if (!(cond_exponent >= 0) || !std::isfinite(cond_exponent))
    throw DomainError("random_pd: cond_exponent must be finite and >= 0");
  std::mt19937_64 rng(seed);
  const Matrix q = orthogonal_from(rng, n);
  std::vector<Real> lambda(n);
  if (cond_exponent == 0) {
    std::fill(lambda.begin(), lambda.end(), Real{1});
  } else {
    std::uniform_real_distribution<double> expo(-cond_exponent, cond_exponent);
    for (auto& l : lambda) l = std::pow(10.0L, static_cast<Real>(expo(rng)));
  }
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Real s = 0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * lambda[k] * q(j, k);
      a(i, j) = a(j, i) = s;
    }
  return PdMatrix::assume(round_to_double(a));
}

SymMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DimensionError("random_symmetric: n must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = normal(rng);
  return SymMatrix(std::move(s));
}

}  // namespace matmeans
