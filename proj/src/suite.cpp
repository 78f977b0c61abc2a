#include "matmeans/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "matmeans/compound.hpp"
#include "matmeans/spectra.hpp"

namespace matmeans {

std::string property_name(PropertyId id) { return "P" + std::to_string(static_cast<int>(id)); }

std::optional<PropertyId> parse_property_id(std::string_view s) {
  if (s.size() >= 2 && (s[0] == 'P' || s[0] == 'p')) s.remove_prefix(1);
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > 15) return std::nullopt;
  }
  if (s.empty() || v < 1) return std::nullopt;
  return static_cast<PropertyId>(v);
}

std::string_view property_description(PropertyId id) {
  switch (id) {
    case PropertyId::P1: return "lambda_j(F_t(p)) non-decreasing across the p grid";
    case PropertyId::P2: return "|||A#tB||| <= |||logEuc||| <= |||F_t(p)||| for p > 0";
    case PropertyId::P3: return "refined chain through (B^{tp/2}A^{(1-t)p}B^{tp/2})^{1/p}";
    case PropertyId::P4: return "five-term chain at p = 1 through Re(A^{1-t}B^t) and A^{1-t}B^t";
    case PropertyId::P5: return "log-majorization chain and lambda(B^{tp/2}A^{(1-t)p}B^{tp/2}) = lambda(A^{(1-t)p}B^{tp})";
    case PropertyId::P6: return "lambda_2(A#B) = 1 > lambda_2(logEuc) ~ 0.9806 on the 2x2 pair";
    case PropertyId::P7: return "lambda(A#B) <_log lambda(B^{1/4}A^{1/2}B^{1/4}), det and trace";
    case PropertyId::P8: return "compound(A#B) = compound(A) # compound(B)";
    case PropertyId::P9: return "multi-matrix monotonicity, Hiai-Zhan decrease on (0,1], Bhatia-Kittaneh";
    case PropertyId::P10: return "|||exp(sum a_i log A_i)||| <= |||(sum a_i A_i^p)^{1/p}||| for p > 0";
    case PropertyId::P11: return "block PSD characterizations and |||A#B||| <= |||A^{1/2}B^{1/2}|||";
    case PropertyId::P12: return "4|||AB||| <= |||(A+B)^2||| and the p >= 1/2 extension";
    case PropertyId::P13: return "Matharu-Aujla, |||B^tA^tB^t||| <= |||(BAB)^t|||, Kosem";
    case PropertyId::P14: return "|||A^{1/2}XA^{1/2}||| <= |||(AX+XA)/2|||";
    case PropertyId::P15: return "A#tB <= (1-t)A+tB and Golden-Thompson";
  }
  return "";
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "";
}

void InstanceSpec::validate() const {
  if (dim < 2) throw DomainError("instance: dim must be >= 2");
  if (!(cond_exponent >= 0) || !std::isfinite(cond_exponent))
    throw DomainError("instance: cond_exponent must be finite and >= 0");
  for (double t : t_values)
    if (!(t >= 0 && t <= 1)) throw DomainError("instance: t values must lie in [0, 1]");
  for (double p : p_grid)
    if (!std::isfinite(p)) throw DomainError("instance: p grid must be finite");
  for (std::size_t i = 1; i < p_grid.size(); ++i)
    if (!(p_grid[i - 1] < p_grid[i])) throw DomainError("instance: p grid must be strictly ascending");
  if (m < 1) throw DomainError("instance: m must be >= 1");
}

namespace {

// Sub-seed streams of one instance.
enum Stream : std::uint64_t { kStreamA = 0, kStreamB = 1, kStreamX = 2, kStreamWeights = 3,
                              kStreamFamily = 16 };

WeightVector random_weights(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<Real> w(m);
  Real sum = 0;
  for (auto& x : w) sum += (x = u(rng));
  for (auto& x : w) x /= sum;
  return WeightVector(std::move(w));
}

}  // namespace

Instance make_instance(const InstanceSpec& spec) {
  spec.validate();
  const auto n = spec.dim;
  const auto c = spec.cond_exponent;
  std::vector<PdMatrix> family;
  for (std::size_t i = 0; i < spec.m; ++i)
    family.push_back(random_pd(n, c, derive_seed(spec.seed, kStreamFamily + i)));
  return Instance{spec,
                  random_pd(n, c, derive_seed(spec.seed, kStreamA)),
                  random_pd(n, c, derive_seed(spec.seed, kStreamB)),
                  std::move(family),
                  random_weights(spec.m, derive_seed(spec.seed, kStreamWeights)),
                  random_symmetric(n, derive_seed(spec.seed, kStreamX))};
}

Instance make_instance(const InstanceSpec& spec, const PdMatrix& a, const PdMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("make_instance: dimension mismatch");
  InstanceSpec s = spec;
  s.dim = a.dim();
  s.m = 2;
  s.validate();
  return Instance{s, a, b, {a, b}, WeightVector::uniform(2),
                  random_symmetric(a.dim(), derive_seed(s.seed, kStreamX))};
}

// ---------------------------------------------------------------------------

namespace {

Real normalized(Real lhs, Real rhs) { return 1 + std::max(std::fabs(lhs), std::fabs(rhs)); }

struct Where {
  std::optional<double> t;
  std::optional<double> p;
};

// Collects the margins of all sub-inequalities and remembers the worst one.
class Tracker {
 public:
  void leq(std::string_view check, Real lhs, Real rhs, const Where& w, std::string norm_id) {
    record(check, (rhs - lhs) / normalized(lhs, rhs), lhs, rhs, w, std::move(norm_id));
  }

  void equal(std::string_view check, Real lhs, Real rhs, const Where& w, std::string norm_id) {
    record(check, -std::fabs(rhs - lhs) / normalized(lhs, rhs), lhs, rhs, w, std::move(norm_id));
  }

  void raw(std::string_view check, Real margin, Real lhs, Real rhs, const Where& w,
           std::string norm_id) {
    record(check, margin, lhs, rhs, w, std::move(norm_id));
  }

  // |||x||| <= |||y||| for every Ky Fan norm.
  void ky_fan(std::string_view check, const Spectrum& x, const Spectrum& y, const Where& w,
              Real scale_lhs = 1) {
    Real sx = 0;
    Real sy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      sx += x[k];
      sy += y[k];
      leq(check, scale_lhs * sx, sy, w, "KyFan:" + std::to_string(k + 1));
    }
  }

  // lambda_j(x) <= lambda_j(y) for every j.
  void pointwise(std::string_view check, const Spectrum& x, const Spectrum& y, const Where& w) {
    for (std::size_t j = 0; j < x.size(); ++j)
      leq(check, x[j], y[j], w, "lambda:" + std::to_string(j + 1));
  }

  // x <_wlog y, plus equality of the full log sums when `det_equal`.
  void log_major(std::string_view check, const Spectrum& x, const Spectrum& y, bool det_equal,
                 const Where& w) {
    const auto r = weak_log_majorize(x, y);
    const std::size_t n = r.margins.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (det_equal && k + 1 == n) {
        equal(check, r.x_prefix[k], r.y_prefix[k], w, "logdet");
      } else {
        leq(check, r.x_prefix[k], r.y_prefix[k], w, "logprefix:" + std::to_string(k + 1));
      }
    }
  }

  void weak_major(std::string_view check, const Spectrum& x, const Spectrum& y, const Where& w) {
    const auto r = weak_majorize(x, y);
    for (std::size_t k = 0; k < r.margins.size(); ++k)
      leq(check, r.x_prefix[k], r.y_prefix[k], w, "prefix:" + std::to_string(k + 1));
  }

  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }
  Real worst() const { return worst_; }
  const Witness& witness() const { return witness_; }

 private:
  void record(std::string_view check, Real margin, Real lhs, Real rhs, const Where& w,
              std::string norm_id) {
    ++count_;
    if (std::isnan(margin)) margin = -std::numeric_limits<Real>::infinity();
    if (count_ == 1 || margin < worst_) {
      worst_ = margin;
      witness_ = Witness{std::string(check), w.t, w.p, std::move(norm_id), lhs, rhs};
    }
  }

  std::size_t count_ = 0;
  Real worst_ = 0;
  Witness witness_;
};

Spectrum sv(const SymMatrix& s) { return singular_values(s); }
Spectrum sv(const Matrix& x) { return singular_values(x); }
Spectrum eig(const SymMatrix& s) { return eigenvalues_desc(s); }

Spectrum root(Spectrum s, Real p) {
  for (auto& v : s.values) v = std::pow(v, 1 / p);
  return s;
}

std::vector<double> positive(const std::vector<double>& grid) {
  std::vector<double> out;
  for (double p : grid)
    if (p > 0) out.push_back(p);
  return out;
}

PdMatrix sym_product(const Matrix& outer, const Matrix& inner) {
  return PdMatrix::assume(multiply(multiply(outer, inner), outer));
}

// (sum_i A_i^p)^{1/p} without weights.
PdMatrix power_sum_root(std::span<const PdMatrix> mats, Real p) {
  Matrix acc(mats.front().dim());
  for (const auto& m : mats) acc += pd_power(m, p).matrix();
  return pd_power(PdMatrix::assume(acc), 1 / p);
}

// ---------------------------------------------------------------------------

void check_p1(const Instance& in, Tracker& tr) {
  const auto& grid = in.spec.p_grid;
  for (double t : in.spec.t_values) {
    std::vector<Spectrum> lam;
    for (double p : grid) lam.push_back(eig(power_mean(in.a, in.b, t, p)));
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      tr.pointwise("lambda_j(F_t(p)) <= lambda_j(F_t(p'))", lam[i], lam[i + 1],
                   {t, grid[i + 1]});
  }
}

void check_p2_p3(const Instance& in, Tracker& tr, bool refined) {
  const auto pos = positive(in.spec.p_grid);
  for (double t : in.spec.t_values) {
    const auto g = sv(geometric_mean(in.a, in.b, t));
    const auto le = sv(log_euclidean(in.a, in.b, t));
    tr.ky_fan("|||A#tB||| <= |||logEuc|||", g, le, {t, {}});
    for (double p : pos) {
      const auto f = sv(power_mean(in.a, in.b, t, p));
      if (refined) {
        const auto s = sv(sandwich_mean(in.a, in.b, t, p));
        tr.ky_fan("|||logEuc||| <= |||sandwich(p)|||", le, s, {t, p});
        tr.ky_fan("|||sandwich(p)||| <= |||F_t(p)|||", s, f, {t, p});
      } else {
        tr.ky_fan("|||logEuc||| <= |||F_t(p)|||", le, f, {t, p});
      }
    }
  }
}

void check_p4(const Instance& in, Tracker& tr) {
  for (double t : in.spec.t_values) {
    const Where w{t, 1.0};
    const Matrix cross = cross_term(in.a, in.b, t);
    const auto g = sv(geometric_mean(in.a, in.b, t));
    const auto le = sv(log_euclidean(in.a, in.b, t));
    const auto sand = sv(sandwich_core(in.a, in.b, t, 1));
    const auto re = sv(hermitian_part(cross));
    const auto x = sv(cross);
    const auto ar = sv(arithmetic_path(in.a, in.b, t));
    tr.ky_fan("|||A#tB||| <= |||logEuc|||", g, le, w);
    tr.ky_fan("|||logEuc||| <= |||B^{t/2}A^{1-t}B^{t/2}|||", le, sand, w);
    tr.ky_fan("|||B^{t/2}A^{1-t}B^{t/2}||| <= |||Re(A^{1-t}B^t)|||", sand, re, w);
    tr.ky_fan("|||Re(A^{1-t}B^t)||| <= |||A^{1-t}B^t|||", re, x, w);
    tr.ky_fan("|||A^{1-t}B^t||| <= |||(1-t)A+tB|||", x, ar, w);
  }
}

void check_p5(const Instance& in, Tracker& tr) {
  const auto pos = positive(in.spec.p_grid);
  for (double t : in.spec.t_values) {
    const auto g = eig(geometric_mean(in.a, in.b, t));
    const auto le = eig(log_euclidean(in.a, in.b, t));
    tr.log_major("lambda(A#tB) <_log lambda(logEuc)", g, le, true, {t, {}});
    for (double p : pos) {
      const Where w{t, p};
      const Real tp = static_cast<Real>(t) * p;
      const Real sp = (1 - static_cast<Real>(t)) * p;
      const auto sand = root(eig(sandwich_core(in.a, in.b, t, p)), p);
      const auto prod = root(product_eigenvalues(pd_power(in.a, sp), pd_power(in.b, tp)), p);
      for (std::size_t j = 0; j < sand.size(); ++j)
        tr.equal("lambda(B^{tp/2}A^{(1-t)p}B^{tp/2})^{1/p} = lambda(A^{(1-t)p}B^{tp})^{1/p}",
                 sand[j], prod[j], w, "lambda:" + std::to_string(j + 1));
      tr.log_major("lambda(logEuc) <_log lambda(sandwich(p))", le, sand, true, w);
      const auto f = eig(power_mean(in.a, in.b, t, p));
      tr.log_major("lambda(sandwich(p)) <_wlog lambda(F_t(p))", sand, f, false, w);
    }
  }
}

void check_p6(Tracker& tr) {
  const auto v = paper_counterexample();
  const Where w{0.5, {}};
  tr.raw("lambda_2(A#B) = 1 within 1e-9", 1e-9L - std::fabs(v.lambda2_geo - 1), v.lambda2_geo, 1,
         w, "lambda:2");
  tr.raw("lambda_2(logEuc) >= 0.9801", v.lambda2_logeuc - 0.9801L, 0.9801L, v.lambda2_logeuc, w,
         "lambda:2");
  tr.raw("lambda_2(logEuc) <= 0.9811", 0.9811L - v.lambda2_logeuc, v.lambda2_logeuc, 0.9811L, w,
         "lambda:2");
  tr.raw("lambda_2(logEuc) < lambda_2(A#B)", v.lambda2_geo - v.lambda2_logeuc, v.lambda2_logeuc,
         v.lambda2_geo, w, "lambda:2");
  tr.raw("det(A#B) = 3 within 1e-8", 1e-8L - std::fabs(v.det_geo - 3), v.det_geo, 3, w, "det");
}

void check_p7(const Instance& in, Tracker& tr) {
  const Where w{0.5, 1.0};
  const PdMatrix gm = geometric_mean(in.a, in.b, 0.5L);
  const auto g = eig(gm);
  const auto lee = eig(sandwich_core(in.a, in.b, 0.5L, 1));
  tr.log_major("lambda(A#B) <_log lambda(B^{1/4}A^{1/2}B^{1/4})", g, lee, true, w);
  tr.weak_major("lambda(A#B) <_w lambda(B^{1/4}A^{1/2}B^{1/4})", g, lee, w);

  Real logdet_g = 0;
  Real logdet_ab = 0;
  for (Real v : g.values) logdet_g += std::log(v);
  for (Real v : eig(in.a).values) logdet_ab += std::log(v) / 2;
  for (Real v : eig(in.b).values) logdet_ab += std::log(v) / 2;
  tr.equal("log det(A#B) = log det(A^{1/2}B^{1/2})", logdet_g, logdet_ab, w, "logdet");

  const Matrix half_prod = multiply(pd_power(in.a, 0.5L), pd_power(in.b, 0.5L));
  tr.leq("tr(A#B) <= tr(A^{1/2}B^{1/2})", gm.matrix().trace(), half_prod.trace(), w, "trace");
}

void check_p8(const Instance& in, Tracker& tr) {
  const PdMatrix gm = geometric_mean(in.a, in.b, 0.5L);
  for (std::size_t k = 1; k <= in.spec.dim; ++k) {
    const Matrix lhs = compound_matrix(gm, k);
    const PdMatrix ca = PdMatrix::assume(compound_matrix(in.a, k));
    const PdMatrix cb = PdMatrix::assume(compound_matrix(in.b, k));
    const Matrix rhs = geometric_mean(ca, cb, 0.5L);
    const Real scale = 1 + std::max(lhs.max_abs(), rhs.max_abs());
    const Real err = max_abs_diff(lhs, rhs) / scale;
    tr.raw("compound_k(A#B) = compound_k(A) # compound_k(B)", -err, lhs.max_abs(), rhs.max_abs(),
           {0.5, {}}, "compound:" + std::to_string(k));
  }
}

void check_p9(const Instance& in, Tracker& tr, std::string& note) {
  const auto& fam = in.family;
  const auto& grid = in.spec.p_grid;

  std::vector<Spectrum> lam;
  for (double p : grid) lam.push_back(eig(power_mean_multi(fam, in.weights, p)));
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    tr.pointwise("lambda_j(F(p)) <= lambda_j(F(p')) for m matrices", lam[i], lam[i + 1],
                 {{}, grid[i + 1]});

  // Hiai-Zhan: |||(sum A_i^p)^{1/p}||| non-increasing on (0, 1].
  std::vector<double> unit;
  std::vector<double> above;
  for (double p : grid) {
    if (p > 0 && p <= 1) unit.push_back(p);
    if (p >= 1) above.push_back(p);
  }
  for (std::size_t i = 0; i + 1 < unit.size(); ++i) {
    const auto lo = sv(power_sum_root(fam, unit[i]));
    const auto hi = sv(power_sum_root(fam, unit[i + 1]));
    tr.ky_fan("|||(sum A_i^p')^{1/p'}||| <= |||(sum A_i^p)^{1/p}|||, p < p' in (0,1]", hi, lo,
              {{}, unit[i + 1]});
  }

  // Outside (0, 1] the decrease may fail; counted, never asserted.
  std::size_t informational = 0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i + 1 < above.size(); ++i) {
    const auto lo = sv(power_sum_root(fam, above[i]));
    const auto hi = sv(power_sum_root(fam, above[i + 1]));
    for (std::size_t k = 1; k <= lo.size(); ++k) {
      ++informational;
      if (ky_fan_norm(hi, k) > ky_fan_norm(lo, k) * (1 + 1e-12L)) ++violations;
    }
  }
  if (informational > 0) {
    note = "hiai_zhan_above_1: " + std::to_string(violations) + "/" +
           std::to_string(informational) + " Ky Fan increases (informational)";
  }

  // Bhatia-Kittaneh: |||(sum A_i)^r||| >= |||sum A_i^r|||, r >= 1.
  Matrix sum(fam.front().dim());
  for (const auto& a : fam) sum += a.matrix();
  const PdMatrix total = PdMatrix::assume(sum);
  for (double r : {1.0, 1.5, 2.0, 3.0}) {
    Matrix powsum(fam.front().dim());
    for (const auto& a : fam) powsum += pd_power(a, r).matrix();
    tr.ky_fan("|||sum A_i^r||| <= |||(sum A_i)^r|||", sv(SymMatrix::symmetrize(powsum)),
              sv(pd_power(total, r)), {{}, r});
  }
}

void check_p10(const Instance& in, Tracker& tr) {
  const auto le = sv(log_euclidean_multi(in.family, in.weights));
  for (double p : positive(in.spec.p_grid))
    tr.ky_fan("|||exp(sum a_i log A_i)||| <= |||(sum a_i A_i^p)^{1/p}|||", le,
              sv(power_mean_multi(in.family, in.weights, p)), {{}, p});
}

void block_psd(Tracker& tr, std::string_view check, const Matrix& a, const Matrix& off,
               const Matrix& b) {
  const std::size_t n = a.dim();
  Matrix block(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      block(i, j) = a(i, j);
      block(i, n + j) = off(i, j);
      block(n + i, j) = off(j, i);
      block(n + i, n + j) = b(i, j);
    }
  const auto e = sym_eigen(SymMatrix::symmetrize(block));
  const Real big = std::max(std::fabs(e.lambda.front()), std::fabs(e.lambda.back()));
  tr.raw(check, e.lambda.back() / (1 + big), 0, e.lambda.back(), {0.5, {}}, "psd");
}

void check_p11(const Instance& in, Tracker& tr) {
  const PdMatrix gm = geometric_mean(in.a, in.b, 0.5L);
  const Matrix half_prod = multiply(pd_power(in.a, 0.5L), pd_power(in.b, 0.5L));
  block_psd(tr, "[[A, A#B], [A#B, B]] >= 0", in.a, gm, in.b);
  block_psd(tr, "[[A, A^{1/2}B^{1/2}], [B^{1/2}A^{1/2}, B]] >= 0", in.a, half_prod, in.b);
  tr.ky_fan("|||A#B||| <= |||A^{1/2}B^{1/2}|||", sv(gm), sv(half_prod), {0.5, {}});
}

void check_p12(const Instance& in, Tracker& tr) {
  const Matrix ab = multiply(in.a, in.b);
  const PdMatrix sum = PdMatrix::assume(in.a.matrix() + in.b.matrix());
  tr.ky_fan("4|||AB||| <= |||(A+B)^2|||", sv(ab), sv(pd_power(sum, 2)), {0.5, 1.0}, 4);

  const PdMatrix ah = pd_power(in.a, 0.5L);
  const PdMatrix bh = pd_power(in.b, 0.5L);
  const auto lhs = sv(multiply(ah, bh));
  const PdMatrix mid = pd_power(PdMatrix::assume((ah.matrix() + bh.matrix()) * 0.5L), 2);
  const auto mid_sv = sv(mid);
  tr.ky_fan("|||A^{1/2}B^{1/2}||| <= |||((A^{1/2}+B^{1/2})/2)^2|||", lhs, mid_sv, {0.5, 0.5});
  for (double p : in.spec.p_grid) {
    if (p < 0.5) continue;
    tr.ky_fan("|||((A^{1/2}+B^{1/2})/2)^2||| <= |||((A^p+B^p)/2)^{1/p}|||", mid_sv,
              sv(power_mean(in.a, in.b, 0.5L, p)), {0.5, p});
  }
}

void check_p13(const Instance& in, Tracker& tr) {
  for (double t : in.spec.t_values) {
    const auto g = eig(geometric_mean(in.a, in.b, t));
    const auto cross = product_eigenvalues(pd_power(in.a, 1 - static_cast<Real>(t)),
                                           pd_power(in.b, t));
    tr.log_major("lambda(A#tB) <_log lambda(A^{1-t}B^t)", g, cross, true, {t, {}});

    const PdMatrix bt = pd_power(in.b, t);
    const auto btatbt = sv(sym_product(bt, pd_power(in.a, t)));
    const auto bab_t = sv(pd_power(sym_product(in.b, in.a), t));
    tr.ky_fan("|||B^tA^tB^t||| <= |||(BAB)^t|||", btatbt, bab_t, {t, {}});
  }
  const PdMatrix gm = geometric_mean(in.a, in.b, 0.5L);
  const PdMatrix bhab = sym_product(pd_power(in.b, 0.5L), in.a);
  tr.ky_fan("|||A#B||| <= |||(B^{1/2}AB^{1/2})^{1/2}|||", sv(gm), sv(pd_power(bhab, 0.5L)),
            {0.5, {}});
  tr.ky_fan("|||(A#B)^2||| <= |||B^{1/2}AB^{1/2}|||", sv(pd_power(gm, 2)), sv(bhab), {0.5, {}});
}

void check_p14(const Instance& in, Tracker& tr) {
  const PdMatrix ah = pd_power(in.a, 0.5L);
  const auto lhs = sv(SymMatrix::symmetrize(multiply(multiply(ah, in.x), ah)));
  const Matrix ax = multiply(in.a, in.x);
  const auto rhs = sv(SymMatrix::symmetrize((ax + ax.transposed()) * 0.5L));
  tr.ky_fan("|||A^{1/2}XA^{1/2}||| <= |||(AX+XA)/2|||", lhs, rhs, {});
}

void check_p15(const Instance& in, Tracker& tr) {
  for (double t : in.spec.t_values) {
    const PdMatrix gm = geometric_mean(in.a, in.b, t);
    const PdMatrix ar = arithmetic_path(in.a, in.b, t);
    const Matrix diff = ar.matrix() - gm.matrix();
    const auto r = loewner_leq(gm, ar);
    tr.raw("A#tB <= (1-t)A + tB", r.margin / (1 + diff.max_abs()), 0, r.margin, {t, {}},
           "loewner");
  }
  const SymMatrix h = pd_log(in.a);
  const SymMatrix k = pd_log(in.b);
  const auto lhs = sv(sym_exp(SymMatrix::symmetrize(h.matrix() + k.matrix())));
  const PdMatrix ek2 = sym_exp(SymMatrix::symmetrize(k.matrix() * 0.5L));
  const auto rhs = sv(sym_product(ek2, sym_exp(h)));
  tr.ky_fan("|||e^{H+K}||| <= |||e^{K/2}e^He^{K/2}|||", lhs, rhs, {});
}

Real tolerance_for(PropertyId id, Real tol) {
  switch (id) {
    case PropertyId::P6: return 0;  // bands are built into the margins
    case PropertyId::P8: return kCompoundTol;
    default: return tol;
  }
}

}  // namespace

PropertyResult check_property(PropertyId id, const Instance& in, Real tol) {
  in.spec.validate();
  PropertyResult r;
  r.id = id;
  r.seed = in.spec.seed;
  r.dim = in.spec.dim;
  r.cond_exponent = in.spec.cond_exponent;
  r.tolerance = tolerance_for(id, tol);

  Tracker tr;
  switch (id) {
    case PropertyId::P1: check_p1(in, tr); break;
    case PropertyId::P2: check_p2_p3(in, tr, false); break;
    case PropertyId::P3: check_p2_p3(in, tr, true); break;
    case PropertyId::P4: check_p4(in, tr); break;
    case PropertyId::P5: check_p5(in, tr); break;
    case PropertyId::P6: check_p6(tr); break;
    case PropertyId::P7: check_p7(in, tr); break;
    case PropertyId::P8: check_p8(in, tr); break;
    case PropertyId::P9: check_p9(in, tr, r.note); break;
    case PropertyId::P10: check_p10(in, tr); break;
    case PropertyId::P11: check_p11(in, tr); break;
    case PropertyId::P12: check_p12(in, tr); break;
    case PropertyId::P13: check_p13(in, tr); break;
    case PropertyId::P14: check_p14(in, tr); break;
    case PropertyId::P15: check_p15(in, tr); break;
    default: throw DomainError("unknown property id");
  }

  r.checks = tr.count();
  if (tr.empty()) {
    r.status = Status::Skipped;
    if (r.note.empty()) r.note = "no applicable sub-inequality for this instance";
    return r;
  }
  r.worst_margin = tr.worst();
  r.witness = tr.witness();
  r.status = r.worst_margin >= -r.tolerance ? Status::Pass : Status::Fail;
  r.marginal = r.status == Status::Pass && r.worst_margin < -r.tolerance / 10;
  return r;
}

PropertyResult check_property(PropertyId id, const InstanceSpec& spec, Real tol) {
  return check_property(id, make_instance(spec), tol);
}

// ---------------------------------------------------------------------------

void CampaignConfig::validate() const {
  if (dim_min < 2 || dim_max < dim_min) throw DomainError("campaign: invalid dimension range");
  if (!(cond_max >= 0) || !std::isfinite(cond_max))
    throw DomainError("campaign: cond_max must be finite and >= 0");
  if (m_values.empty()) throw DomainError("campaign: m_values must not be empty");
  InstanceSpec probe;
  probe.t_values = t_values;
  probe.p_grid = p_grid;
  for (std::size_t m : m_values) {
    probe.m = m;
    probe.validate();
  }
}

InstanceSpec campaign_instance(const CampaignConfig& config, std::size_t i) {
  InstanceSpec s;
  s.seed = config.master_seed + i;
  s.dim = config.dim_min + i % (config.dim_max - config.dim_min + 1);
  std::mt19937_64 rng(derive_seed(s.seed, 0xC0DE));
  s.cond_exponent = std::uniform_real_distribution<double>(0.0, config.cond_max)(rng);
  s.t_values = config.t_values;
  s.p_grid = config.p_grid;
  s.m = config.m_values[i % config.m_values.size()];
  return s;
}

std::size_t CampaignReport::failures() const {
  std::size_t f = 0;
  for (const auto& [id, c] : counts) f += c.fail;
  return f;
}

const PropertyCounts& CampaignReport::counts_for(PropertyId id) const {
  for (const auto& [pid, c] : counts)
    if (pid == id) return c;
  throw DomainError("property " + property_name(id) + " not in this report");
}

namespace {

std::vector<PropertyResult> evaluate_instance(const CampaignConfig& config, std::size_t i) {
  const InstanceSpec spec = campaign_instance(config, i);
  std::vector<PropertyResult> out;
  out.reserve(config.properties.size());
  const Instance inst = make_instance(spec);
  for (PropertyId id : config.properties) {
    try {
      out.push_back(check_property(id, inst, config.tol));
    } catch (const std::exception& e) {
      PropertyResult r;
      r.id = id;
      r.seed = spec.seed;
      r.dim = spec.dim;
      r.cond_exponent = spec.cond_exponent;
      r.status = Status::Fail;
      r.tolerance = tolerance_for(id, config.tol);
      r.worst_margin = -std::numeric_limits<Real>::infinity();
      r.note = std::string("error: ") + e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::vector<PropertyResult>> per_instance(config.count);
  if (!config.properties.empty() && config.count > 0) {
    const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, config.count));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < config.count; i = next++)
        per_instance[i] = evaluate_instance(config, i);
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
  }

  CampaignReport report;
  report.config = config;
  for (PropertyId id : config.properties) report.counts.emplace_back(id, PropertyCounts{});
  for (auto& results : per_instance) {
    for (std::size_t k = 0; k < results.size(); ++k) {
      auto& c = report.counts[k].second;
      switch (results[k].status) {
        case Status::Pass: ++c.pass; break;
        case Status::Fail: ++c.fail; break;
        case Status::Skipped: ++c.skipped; break;
      }
      if (results[k].marginal) ++c.marginal;
      report.results.push_back(std::move(results[k]));
    }
  }
  report.wall_clock = std::chrono::steady_clock::now() - start;
  return report;
}

// ---------------------------------------------------------------------------

PdMatrix counterexample_a() { return PdMatrix(Matrix{{2, 0}, {0, 1}}); }
PdMatrix counterexample_b() { return PdMatrix(Matrix{{3, 3}, {3, 4.5L}}); }

CounterexampleValues paper_counterexample() {
  const PdMatrix a = counterexample_a();
  const PdMatrix b = counterexample_b();
  const PdMatrix g = geometric_mean(a, b, 0.5L);
  const auto lg = eig(g);
  const auto ll = eig(log_euclidean(a, b, 0.5L));
  return {lg[1], ll[1], lg[0], determinant(g)};
}

}  // namespace matmeans
