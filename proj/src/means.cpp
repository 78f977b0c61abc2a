#include "matmeans/means.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace matmeans {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

void require_weight(Real t, const char* what) {
  if (!(t >= 0 && t <= 1)) throw DomainError(std::string(what) + ": t must lie in [0, 1]");
}

void require_finite(Real p, const char* what) {
  if (!std::isfinite(p)) throw DomainError(std::string(what) + ": p must be finite");
}

PdMatrix symmetric_product(const Matrix& outer, const Matrix& inner) {
  return PdMatrix::assume(multiply(multiply(outer, inner), outer));
}

}  // namespace

WeightVector::WeightVector(std::vector<Real> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw DimensionError("WeightVector: at least one weight is required");
  Real sum = 0;
  for (Real a : alphas_) {
    if (!(a >= 0) || !std::isfinite(a)) throw DomainError("WeightVector: weights must be >= 0");
    sum += a;
  }
  if (std::fabs(sum - 1) > 1e-12L) throw DomainError("WeightVector: weights must sum to 1");
}

WeightVector WeightVector::uniform(std::size_t m) {
  return WeightVector(std::vector<Real>(m, Real{1} / static_cast<Real>(m)));
}

PdMatrix geometric_mean(const PdMatrix& a, const PdMatrix& b, Real t) {
  require_same_dim(a, b, "geometric_mean");
  require_weight(t, "geometric_mean");
  if (t == 0) return a;
  if (t == 1) return b;
  const auto ea = sym_eigen(a);
  const PdMatrix half = pd_power(ea, 0.5L);
  const PdMatrix inv_half = pd_power(ea, -0.5L);
  const PdMatrix inner = symmetric_product(inv_half, b);
  return symmetric_product(half, pd_power(inner, t));
}

PdMatrix log_euclidean(const PdMatrix& a, const PdMatrix& b, Real t) {
  require_same_dim(a, b, "log_euclidean");
  require_weight(t, "log_euclidean");
  if (t == 0) return a;
  if (t == 1) return b;
  return sym_exp(SymMatrix::symmetrize((1 - t) * pd_log(a).matrix() + t * pd_log(b).matrix()));
}

PdMatrix power_mean(const PdMatrix& a, const PdMatrix& b, Real t, Real p) {
  require_same_dim(a, b, "power_mean");
  require_weight(t, "power_mean");
  require_finite(p, "power_mean");
  if (t == 0) return a;
  if (t == 1) return b;
  if (p == 0) return log_euclidean(a, b, t);
  const Matrix mix = (1 - t) * pd_power(a, p).matrix() + t * pd_power(b, p).matrix();
  return pd_power(PdMatrix::assume(mix), 1 / p);
}

PdMatrix arithmetic_path(const PdMatrix& a, const PdMatrix& b, Real t) {
  require_same_dim(a, b, "arithmetic_path");
  require_weight(t, "arithmetic_path");
  if (t == 0) return a;
  if (t == 1) return b;
  return PdMatrix::assume((1 - t) * a.matrix() + t * b.matrix());
}

PdMatrix sandwich_core(const PdMatrix& a, const PdMatrix& b, Real t, Real p) {
  require_same_dim(a, b, "sandwich_mean");
  require_weight(t, "sandwich_mean");
  if (!(p > 0) || !std::isfinite(p)) throw DomainError("sandwich_mean: p must be positive");
  if (t == 0) return pd_power(a, p);
  if (t == 1) return pd_power(b, p);
  return symmetric_product(pd_power(b, t * p / 2), pd_power(a, (1 - t) * p));
}

PdMatrix sandwich_mean(const PdMatrix& a, const PdMatrix& b, Real t, Real p) {
  if (t == 0 || t == 1) {
    require_same_dim(a, b, "sandwich_mean");
    if (!(p > 0) || !std::isfinite(p)) throw DomainError("sandwich_mean: p must be positive");
    return t == 0 ? a : b;
  }
  return pd_power(sandwich_core(a, b, t, p), 1 / p);
}

Matrix cross_term(const PdMatrix& a, const PdMatrix& b, Real t) {
  require_same_dim(a, b, "cross_term");
  require_weight(t, "cross_term");
  if (t == 0) return a;
  if (t == 1) return b;
  return multiply(pd_power(a, 1 - t), pd_power(b, t));
}

SymMatrix hermitian_part(const Matrix& x) { return SymMatrix::symmetrize(x); }

namespace {

void validate_family(std::span<const PdMatrix> mats, const WeightVector& w, const char* what) {
  if (mats.empty()) throw DimensionError(std::string(what) + ": no matrices");
  if (mats.size() != w.size()) {
    throw DimensionError(std::string(what) + ": " + std::to_string(mats.size()) +
                         " matrices but " + std::to_string(w.size()) + " weights");
  }
  for (const auto& m : mats) require_same_dim(mats.front(), m, what);
}

}  // namespace

PdMatrix log_euclidean_multi(std::span<const PdMatrix> mats, const WeightVector& w) {
  validate_family(mats, w, "log_euclidean_multi");
  if (mats.size() == 1) return mats.front();
  Matrix acc(mats.front().dim());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (w[i] == 0) continue;
    acc += w[i] * pd_log(mats[i]).matrix();
  }
  return sym_exp(SymMatrix::symmetrize(acc));
}

PdMatrix power_mean_multi(std::span<const PdMatrix> mats, const WeightVector& w, Real p) {
  validate_family(mats, w, "power_mean_multi");
  require_finite(p, "power_mean_multi");
  if (mats.size() == 1) return mats.front();
  if (p == 0) return log_euclidean_multi(mats, w);
  Matrix acc(mats.front().dim());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (w[i] == 0) continue;
    acc += w[i] * pd_power(mats[i], p).matrix();
  }
  return pd_power(PdMatrix::assume(acc), 1 / p);
}

Matrix geometric_mean_unitary_factor(const PdMatrix& a, const PdMatrix& b) {
  require_same_dim(a, b, "geometric_mean_unitary_factor");
  const PdMatrix g = geometric_mean(a, b, 0.5L);
  return multiply(multiply(pd_power(a, -0.5L), g), pd_power(b, -0.5L));
}

}  // namespace matmeans
