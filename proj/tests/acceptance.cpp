// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
//   acceptance <path-to-matmeans-cli>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "matmeans/compound.hpp"
#include "matmeans/means.hpp"
#include "matmeans/spectra.hpp"
#include "matmeans/suite.hpp"

using namespace matmeans;

namespace {

int g_failed = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void counterexample() {
  const auto v = paper_counterexample();
  const double geo = static_cast<double>(v.lambda2_geo);
  const double le = static_cast<double>(v.lambda2_logeuc);
  const double det = static_cast<double>(v.det_geo);
  const bool ok = std::fabs(geo - 1) <= 1e-9 && le >= 0.9801 && le <= 0.9811 && std::fabs(det - 3) <= 1e-8;
  std::ostringstream s;
  s.precision(10);
  s << "lambda2(A#B) = " << geo << ", lambda2(logEuc) = " << le << ", det(A#B) = " << det;
  report(1, ok, s.str());
}

struct Summary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  double worst = 0;
  std::string first_failure;
};

Summary summarize(const CampaignReport& rep, std::initializer_list<PropertyId> ids) {
  Summary s;
  bool first = true;
  for (const auto& r : rep.results) {
    if (std::find(ids.begin(), ids.end(), r.id) == ids.end()) continue;
    const double m = static_cast<double>(r.worst_margin);
    if (first || m < s.worst) s.worst = m;
    first = false;
    switch (r.status) {
      case Status::Pass: ++s.pass; break;
      case Status::Skipped: ++s.skipped; break;
      case Status::Fail:
        ++s.fail;
        if (s.first_failure.empty())
          s.first_failure = property_name(r.id) + " seed " + std::to_string(r.seed) + " " +
                            r.witness.check + " " + r.note;
        break;
    }
  }
  return s;
}

void campaign_criterion(int id, const CampaignReport& rep, std::initializer_list<PropertyId> ids,
                        const std::string& what) {
  const Summary s = summarize(rep, ids);
  std::string detail = what + ": " + std::to_string(s.pass) + " pass, " + std::to_string(s.fail) +
                       " fail, worst margin " + fmt(s.worst);
  if (!s.first_failure.empty()) detail += "; first failure: " + s.first_failure;
  report(id, s.fail == 0 && s.pass > 0 && s.skipped == 0, detail);
}

void compound_criterion() {
  std::size_t pass = 0;
  std::size_t total = 0;
  double worst = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    InstanceSpec spec;
    spec.seed = derive_seed(i, 0xAC6);
    spec.dim = 3 + i % 3;
    spec.cond_exponent = 1.5 * static_cast<double>(i % 7) / 6;
    const auto r = check_property(PropertyId::P8, spec, kCompoundTol);
    ++total;
    if (r.status == Status::Pass) ++pass;
    worst = std::min(worst, static_cast<double>(r.worst_margin));
  }
  report(6, pass == total,
         "compound of the geometric mean, dims 3-5, all k: " + std::to_string(pass) + "/" +
             std::to_string(total) + " pass, worst margin " + fmt(worst) + " (tol 1e-7)");
}

// ((1-t) a^p + t b^p)^{1/p} with the geometric limit at p = 0.
double scalar_power_mean(double a, double b, double t, double p) {
  if (p == 0) return std::pow(a, 1 - t) * std::pow(b, t);
  return std::pow((1 - t) * std::pow(a, p) + t * std::pow(b, p), 1 / p);
}

void oracle_criterion() {
  double worst = 0;
  std::size_t cases = 0;
  auto compare = [&](const Matrix& got, const Matrix& want) {
    ++cases;
    worst = std::max(worst, static_cast<double>(max_abs_diff(got, want)));
  };
  const std::vector<double> ts{0, 0.25, 0.5, 0.75, 1};
  const std::vector<double> ps{-4, -2, -1, -0.5, -0.1, 0, 0.1, 0.5, 1, 2, 4};
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t n = 2 + s % 5;
    // even seeds: diagonal inputs; odd seeds: a shared random eigenbasis
    const Matrix q = s % 2 ? random_orthogonal(n, derive_seed(s, 9)) : Matrix::identity(n);
    const PdMatrix da = random_pd(n, 1, derive_seed(s, 1));
    const PdMatrix db = random_pd(n, 1, derive_seed(s, 2));
    std::vector<std::vector<double>> d(4, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      d[0][i] = static_cast<double>(da(i, i));
      d[1][i] = static_cast<double>(db(i, i));
      d[2][i] = static_cast<double>(random_pd(n, 1, derive_seed(s, 3))(i, i));
      d[3][i] = static_cast<double>(random_pd(n, 1, derive_seed(s, 4))(i, i));
    }
    auto conj = [&](const std::function<double(std::size_t)>& f) {
      Matrix m(n);
      for (std::size_t i = 0; i < n; ++i) m(i, i) = f(i);
      return multiply(multiply(q, m), q.transposed());
    };
    auto pd = [&](const std::vector<double>& v) {
      return PdMatrix::assume(conj([&](std::size_t i) { return v[i]; }));
    };
    const PdMatrix a = pd(d[0]);
    const PdMatrix b = pd(d[1]);
    for (double t : ts) {
      const auto geo = conj([&](std::size_t i) { return scalar_power_mean(d[0][i], d[1][i], t, 0); });
      compare(geometric_mean(a, b, t), geo);
      compare(log_euclidean(a, b, t), geo);
      compare(cross_term(a, b, t), geo);
      compare(arithmetic_path(a, b, t),
              conj([&](std::size_t i) { return scalar_power_mean(d[0][i], d[1][i], t, 1); }));
      for (double p : ps) {
        compare(power_mean(a, b, t, p),
                conj([&](std::size_t i) { return scalar_power_mean(d[0][i], d[1][i], t, p); }));
        if (p > 0) compare(sandwich_mean(a, b, t, p), geo);
      }
    }
    const std::vector<PdMatrix> fam{pd(d[0]), pd(d[1]), pd(d[2]), pd(d[3])};
    const WeightVector w({0.1L, 0.2L, 0.3L, 0.4L});
    const double wd[4] = {0.1, 0.2, 0.3, 0.4};
    for (double p : ps) {
      compare(power_mean_multi(fam, w, p), conj([&](std::size_t i) {
                double acc = p == 0 ? 1 : 0;
                for (int k = 0; k < 4; ++k)
                  acc = p == 0 ? acc * std::pow(d[k][i], wd[k]) : acc + wd[k] * std::pow(d[k][i], p);
                return p == 0 ? acc : std::pow(acc, 1 / p);
              }));
    }
  }
  report(8, worst <= 1e-12,
         "commuting inputs vs scalar formulas, " + std::to_string(cases) +
             " comparisons: max abs entry error " + fmt(worst) + " (tol 1e-12)");
}

void kernel_criterion() {
  double recon = 0;
  double ortho = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const std::size_t n = 2 + s % 7;
    const SymMatrix a = s % 2 ? random_symmetric(n, derive_seed(s, 5))
                              : SymMatrix(random_pd(n, 3, derive_seed(s, 6)));
    const auto e = sym_eigen(a);
    Matrix lam(n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = e.lambda[i];
    const Matrix back = multiply(multiply(e.q, lam), e.q.transposed());
    recon = std::max(recon, static_cast<double>(max_abs_diff(back, a) / (1 + a.matrix().max_abs())));
    ortho = std::max(ortho, static_cast<double>(max_abs_diff(multiply(e.q.transposed(), e.q),
                                                             Matrix::identity(n))));
  }
  double roundtrip = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const std::size_t n = 2 + s % 5;
    const PdMatrix a = random_pd(n, 1.5, derive_seed(s, 7));
    const PdMatrix back = sym_exp(pd_log(a));
    roundtrip = std::max(roundtrip, static_cast<double>(max_abs_diff(back, a) / a.matrix().max_abs()));
    const SymMatrix h = random_symmetric(n, derive_seed(s, 8));
    const SymMatrix h2 = pd_log(sym_exp(h));
    roundtrip = std::max(roundtrip, static_cast<double>(max_abs_diff(h2, h) / (1 + h.matrix().max_abs())));
  }
  report(9, recon <= 1e-9 && ortho <= 1e-10 && roundtrip <= 1e-8,
         "500 matrices: reconstruction " + fmt(recon) + ", orthogonality " + fmt(ortho) +
             ", exp/log round trip " + fmt(roundtrip));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism_criterion(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::current_path() / "acceptance_work";
  fs::create_directories(dir);
  const fs::path r1 = dir / "run1.jsonl";
  const fs::path r2 = dir / "run2.jsonl";
  auto run = [&](const fs::path& out, int jobs) {
    const std::string cmd = "\"" + cli + "\" check --seed 2024 --count 100 --jobs " +
                            std::to_string(jobs) + " --out \"" + out.string() + "\" 2>/dev/null";
    return std::system(cmd.c_str());
  };
  const int rc1 = run(r1, 1);
  const int rc2 = run(r2, 4);
  const std::string a = slurp(r1);
  const std::string b = slurp(r2);
  const bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  report(10, ok,
         "two `check` runs with seed 2024 (1 and 4 jobs): " + std::to_string(a.size()) + " and " +
             std::to_string(b.size()) + " bytes, " + (a == b ? "identical" : "different"));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <matmeans-cli>\n";
    return 2;
  }

  counterexample();

  CampaignConfig cfg;
  cfg.master_seed = 1;
  cfg.count = 1000;
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  const CampaignReport rep = run_campaign(cfg);

  campaign_criterion(2, rep, {PropertyId::P1},
                     "1000 instances, eigenvalues of F_t(p) non-decreasing over the p grid");
  campaign_criterion(3, rep, {PropertyId::P2, PropertyId::P3, PropertyId::P4},
                     "Ky Fan k = 1..n chains incl. the five-term chain at p = 1");
  campaign_criterion(4, rep, {PropertyId::P5},
                     "log-majorization chain and product spectral identity");
  campaign_criterion(5, rep, {PropertyId::P7},
                     "t = 1/2 endpoint: log-majorization, weak majorization, det, trace");
  compound_criterion();
  campaign_criterion(7, rep,
                     {PropertyId::P9, PropertyId::P10, PropertyId::P11, PropertyId::P12,
                      PropertyId::P13, PropertyId::P14, PropertyId::P15},
                     "multi-matrix, block PSD, Bhatia-Davis and related inequalities");
  oracle_criterion();
  kernel_criterion();
  determinism_criterion(argv[1]);

  std::printf("%s: %d of 10 criteria failed\n", g_failed ? "FAIL" : "PASS", g_failed);
  return g_failed ? 1 : 0;
}
