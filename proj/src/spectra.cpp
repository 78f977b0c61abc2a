#include "matmeans/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "matmeans/means.hpp"

namespace matmeans {

Spectrum eigenvalues_desc(const SymMatrix& s) { return Spectrum{sym_eigen(s).lambda}; }

Spectrum product_eigenvalues(const PdMatrix& a, const PdMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("product_eigenvalues: dimension mismatch");
  const PdMatrix h = pd_power(a, 0.5L);
  return eigenvalues_desc(SymMatrix::symmetrize(multiply(multiply(h, b), h)));
}

Real ky_fan_norm(const Spectrum& singular, std::size_t k) {
  if (k < 1 || k > singular.size()) {
    throw DomainError("ky_fan_norm: k=" + std::to_string(k) + " outside [1, " +
                      std::to_string(singular.size()) + "]");
  }
  Real s = 0;
  for (std::size_t i = 0; i < k; ++i) s += singular[i];
  return s;
}

Real ky_fan_norm(const Matrix& x, std::size_t k) { return ky_fan_norm(singular_values(x), k); }
Real ky_fan_norm(const SymMatrix& s, std::size_t k) { return ky_fan_norm(singular_values(s), k); }

Real schatten_norm(const Spectrum& singular, Real p) {
  if (std::isinf(p) && p > 0) return singular.size() ? singular[0] : Real{0};
  if (!(p >= 1)) throw DomainError("schatten_norm: p must be >= 1 or infinity");
  const Real top = singular.size() ? singular[0] : Real{0};
  if (top == 0) return 0;
  Real s = 0;
  for (Real v : singular.values) s += std::pow(v / top, p);
  return top * std::pow(s, 1 / p);
}

Real schatten_norm(const Matrix& x, Real p) { return schatten_norm(singular_values(x), p); }
Real schatten_norm(const SymMatrix& s, Real p) { return schatten_norm(singular_values(s), p); }

namespace {

void require_same_length(const Spectrum& x, const Spectrum& y, const char* what) {
  if (x.size() != y.size()) throw DimensionError(std::string(what) + ": length mismatch");
}

MajorizationResult prefix_compare(const std::vector<Real>& x, const std::vector<Real>& y,
                                  Real tol) {
  MajorizationResult r;
  Real sx = 0;
  Real sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    r.margins.push_back(sy - sx);
    r.x_prefix.push_back(sx);
    r.y_prefix.push_back(sy);
  }
  r.total_gap = sy - sx;
  const Real scale = 1 + std::max(std::fabs(sx), std::fabs(sy));
  r.holds = true;
  Real worst = std::numeric_limits<Real>::infinity();
  for (std::size_t k = 0; k < r.margins.size(); ++k) {
    if (r.margins[k] < -tol * scale) r.holds = false;
    if (r.margins[k] < worst) {
      worst = r.margins[k];
      r.tightest_k = k + 1;
    }
  }
  return r;
}

std::vector<Real> logs_of(const Spectrum& s, const char* what) {
  std::vector<Real> out;
  out.reserve(s.size());
  for (Real v : s.values) {
    if (!(v > 0)) throw DomainError(std::string(what) + ": entries must be strictly positive");
    out.push_back(std::log(std::max(v, kLogFloor)));
  }
  return out;
}

}  // namespace

MajorizationResult weak_majorize(const Spectrum& x, const Spectrum& y, Real tol) {
  require_same_length(x, y, "weak_majorize");
  return prefix_compare(x.values, y.values, tol);
}

MajorizationResult majorize(const Spectrum& x, const Spectrum& y, Real tol) {
  auto r = weak_majorize(x, y, tol);
  Real sx = 0;
  Real sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const Real scale = 1 + std::max(std::fabs(sx), std::fabs(sy));
  r.holds = r.holds && std::fabs(r.total_gap) <= tol * scale;
  return r;
}

MajorizationResult weak_log_majorize(const Spectrum& x, const Spectrum& y, Real tol) {
  require_same_length(x, y, "weak_log_majorize");
  return prefix_compare(logs_of(x, "weak_log_majorize"), logs_of(y, "weak_log_majorize"), tol);
}

MajorizationResult log_majorize(const Spectrum& x, const Spectrum& y, Real tol) {
  auto r = weak_log_majorize(x, y, tol);
  r.holds = r.holds && std::fabs(r.total_gap) <= tol;
  return r;
}

LoewnerResult loewner_leq(const SymMatrix& a, const SymMatrix& b, Real tol) {
  if (a.dim() != b.dim()) throw DimensionError("loewner_leq: dimension mismatch");
  const Matrix diff = b.matrix() - a.matrix();
  const Real lmin = sym_eigen(SymMatrix::symmetrize(diff)).lambda.back();
  return {lmin >= -tol * (1 + diff.max_abs()), lmin};
}

}  // namespace matmeans
