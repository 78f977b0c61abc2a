// matmeans: command-line front end for the matrix means and the inequality
// campaign.
//
//   matmeans check         run the property catalogue on seeded instances
//   matmeans paper-example reproduce the 2x2 pointwise-domination failure
//   matmeans scan-p        lambda_j(F_t(p)) over a p grid, as CSV
//   matmeans means         all means of two matrices and their norms
//   matmeans gen           write a random positive definite matrix
//
// Exit codes: 0 success, 1 property failure, 2 usage or input error.

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "matmeans/matrix_io.hpp"
#include "matmeans/means.hpp"
#include "matmeans/report.hpp"
#include "matmeans/spectra.hpp"
#include "matmeans/suite.hpp"

namespace {

using namespace matmeans;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string_view field(text.data() + start, end - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw UsageError(std::string(what) + ": invalid number '" + std::string(field) + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  auto to_size = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("--dims: expected N or LO:HI, got '" + text + "'");
    return v;
  };
  if (colon == std::string::npos) {
    const auto v = to_size(text);
    return {v, v};
  }
  return {to_size(std::string_view(text).substr(0, colon)),
          to_size(std::string_view(text).substr(colon + 1))};
}

// Opens `path` for writing, or returns stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) throw std::runtime_error("write failed: " + path);
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

PdMatrix load_pd(const std::string& path) {
  try {
    return PdMatrix(read_matrix_file(path));
  } catch (const DomainError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string fmt(Real x, int digits = 10) { return format_real(x, digits); }

void print_matrix(std::ostream& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out << "  ";
    for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? " " : "") << std::setw(18) << fmt(m(i, j));
    out << '\n';
  }
}

void print_norms(std::ostream& out, const Spectrum& singular) {
  out << "  singular values:";
  for (Real s : singular.values) out << ' ' << fmt(s);
  out << "\n  norms:";
  for (std::size_t k = 1; k <= singular.size(); ++k)
    out << " KyFan:" << k << '=' << fmt(ky_fan_norm(singular, k));
  out << " Schatten:1=" << fmt(schatten_norm(singular, 1))
      << " Schatten:2=" << fmt(schatten_norm(singular, 2))
      << " Schatten:inf=" << fmt(schatten_norm(singular, kSchattenInf)) << '\n';
}

// ---------------------------------------------------------------------------

struct CheckOptions {
  std::uint64_t seed = 1;
  std::string dims = "2:6";
  std::size_t count = 100;
  double cond = 1.5;
  std::string t_values = "0,0.25,0.5,0.75,1";
  std::string p_grid = "-4,-2,-1,-0.5,-0.1,0,0.1,0.5,1,2,4";
  std::string m_values = "2,3,4";
  std::string properties = "all";
  double tol = 1e-8;
  unsigned jobs = 1;
  std::string out = "-";
  std::string format = "jsonl";
  std::string csv;
};

int cmd_check(const CheckOptions& o) {
  CampaignConfig cfg;
  cfg.master_seed = o.seed;
  if (const char* env = std::getenv("MEANS_SEED"); env && *env) {
    std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cfg.master_seed);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("MEANS_SEED: not an unsigned integer");
  }
  std::tie(cfg.dim_min, cfg.dim_max) = parse_range(o.dims);
  cfg.count = o.count;
  cfg.cond_max = o.cond;
  cfg.t_values = parse_list(o.t_values, "--t");
  cfg.p_grid = parse_list(o.p_grid, "--p-grid");
  cfg.m_values.clear();
  for (double m : parse_list(o.m_values, "--m")) {
    if (m < 1 || m != static_cast<std::size_t>(m)) throw UsageError("--m: positive integers only");
    cfg.m_values.push_back(static_cast<std::size_t>(m));
  }
  if (o.properties != "all") {
    cfg.properties.clear();
    std::stringstream ss(o.properties);
    for (std::string item; std::getline(ss, item, ',');) {
      if (item.empty()) continue;
      const auto id = parse_property_id(item);
      if (!id) throw UsageError("--properties: unknown property '" + item + "'");
      cfg.properties.push_back(*id);
    }
  }
  cfg.tol = o.tol;
  cfg.jobs = o.jobs;
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  const auto report = run_campaign(cfg);

  Output out(o.out);
  if (o.format == "csv") {
    write_csv_summary(out.stream(), report);
  } else {
    write_jsonl(out.stream(), report);
  }
  out.finish(o.out);
  if (!o.csv.empty()) {
    Output csv(o.csv);
    write_csv_summary(csv.stream(), report);
    csv.finish(o.csv);
  }

  std::cerr << "instances=" << cfg.count << " properties=" << cfg.properties.size()
            << " failures=" << report.failures() << " wall=" << std::fixed << std::setprecision(2)
            << report.wall_clock.count() << "s\n";
  for (const auto& [id, c] : report.counts) {
    std::cerr << "  " << std::left << std::setw(4) << property_name(id) << " pass=" << c.pass
              << " fail=" << c.fail << " marginal=" << c.marginal << " skipped=" << c.skipped
              << '\n';
  }
  return report.failures() == 0 ? kExitOk : kExitFailure;
}

int cmd_paper_example() {
  const auto v = paper_counterexample();
  const bool geo_ok = std::fabs(v.lambda2_geo - 1) <= 1e-9L;
  const bool le_ok = v.lambda2_logeuc >= 0.9801L && v.lambda2_logeuc <= 0.9811L;
  const bool det_ok = std::fabs(v.det_geo - 3) <= 1e-8L;
  std::cout << std::fixed << std::setprecision(9);
  std::cout << "A = [[2, 0], [0, 1]], B = [[3, 3], [3, 4.5]]\n";
  std::cout << "lambda_2(A#B)    = " << static_cast<double>(v.lambda2_geo) << "  (expected 1)\n";
  std::cout << "lambda_2(logEuc) = " << static_cast<double>(v.lambda2_logeuc)
            << "  (expected in [0.9801, 0.9811])\n";
  std::cout << "lambda_1(A#B)    = " << static_cast<double>(v.lambda1_geo) << '\n';
  std::cout << "det(A#B)         = " << static_cast<double>(v.det_geo) << "  (expected 3)\n";
  std::cout << "pointwise domination lambda_2(A#B) <= lambda_2(logEuc): "
            << (v.lambda2_geo <= v.lambda2_logeuc ? "holds" : "fails") << '\n';
  const bool ok = geo_ok && le_ok && det_ok;
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitFailure;
}

int cmd_scan_p(const std::string& a_path, const std::string& b_path, double t,
               const std::string& grid_text, const std::string& out_path) {
  const PdMatrix a = load_pd(a_path);
  const PdMatrix b = load_pd(b_path);
  if (a.dim() != b.dim()) throw UsageError("scan-p: matrices have different dimensions");
  if (!(t >= 0 && t <= 1)) throw UsageError("--t must lie in [0, 1]");
  auto grid = parse_list(grid_text, "--p-grid");
  std::sort(grid.begin(), grid.end());

  Output out(out_path);
  out.stream() << "p,j,lambda\n";
  for (double p : grid) {
    const auto lam = eigenvalues_desc(power_mean(a, b, t, p));
    for (std::size_t j = 0; j < lam.size(); ++j)
      out.stream() << format_real(p) << ',' << j + 1 << ',' << format_real(lam[j]) << '\n';
  }
  out.finish(out_path);
  return kExitOk;
}

int cmd_means(const std::string& a_path, const std::string& b_path, double t, double p) {
  const PdMatrix a = load_pd(a_path);
  const PdMatrix b = load_pd(b_path);
  if (a.dim() != b.dim()) throw UsageError("means: matrices have different dimensions");
  if (!(t >= 0 && t <= 1)) throw UsageError("--t must lie in [0, 1]");

  std::cout << "t = " << format_real(t) << ", p = " << format_real(p) << "\n\n";
  auto show = [](const std::string& name, const Matrix& m, const Spectrum& s) {
    std::cout << name << '\n';
    print_matrix(std::cout, m);
    print_norms(std::cout, s);
    std::cout << '\n';
  };
  const PdMatrix g = geometric_mean(a, b, t);
  show("geometric_mean A#_tB", g, singular_values(g));
  const PdMatrix f = power_mean(a, b, t, p);
  show("power_mean F_t(p)", f, singular_values(f));
  const PdMatrix le = log_euclidean(a, b, t);
  show("log_euclidean exp((1-t)log A + t log B)", le, singular_values(le));
  const PdMatrix ar = arithmetic_path(a, b, t);
  show("arithmetic_path (1-t)A + tB", ar, singular_values(ar));
  if (p > 0) {
    const PdMatrix s = sandwich_mean(a, b, t, p);
    show("sandwich_mean (B^{tp/2}A^{(1-t)p}B^{tp/2})^{1/p}", s, singular_values(s));
  } else {
    std::cout << "sandwich_mean: undefined for p <= 0\n\n";
  }
  const Matrix x = cross_term(a, b, t);
  show("cross_term A^{1-t}B^t", x, singular_values(x));
  const SymMatrix re = hermitian_part(x);
  show("hermitian_part Re(A^{1-t}B^t)", re, singular_values(re));
  return kExitOk;
}

int cmd_gen(std::size_t dim, double cond, std::uint64_t seed, const std::string& out_path) {
  if (dim < 1) throw UsageError("--dim must be >= 1");
  if (!(cond >= 0)) throw UsageError("--cond must be >= 0");
  Output out(out_path);
  out.stream() << format_matrix(random_pd(dim, cond, seed));
  out.finish(out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Means of positive definite matrices and their norm inequalities"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Run the property catalogue on seeded instances");
  check_cmd->add_option("--seed", check.seed, "Master seed (MEANS_SEED overrides)");
  check_cmd->add_option("--dims", check.dims, "Dimension range LO:HI");
  check_cmd->add_option("--count", check.count, "Number of instances");
  check_cmd->add_option("--cond", check.cond, "Maximum cond exponent (cond <= 10^(2c))");
  check_cmd->add_option("--t", check.t_values, "Comma-separated t values");
  check_cmd->add_option("--p-grid", check.p_grid, "Comma-separated ascending p grid");
  check_cmd->add_option("--m", check.m_values, "Comma-separated matrix counts for P9/P10");
  check_cmd->add_option("--properties", check.properties, "all, or comma-separated P1..P15");
  check_cmd->add_option("--tol", check.tol, "Relative tolerance");
  check_cmd->add_option("--jobs", check.jobs, "Worker threads");
  check_cmd->add_option("--out", check.out, "Report path ('-' for stdout)");
  check_cmd->add_option("--format", check.format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  check_cmd->add_option("--csv", check.csv, "Also write the CSV summary here");

  auto* paper_cmd = app.add_subcommand("paper-example", "Reproduce the 2x2 counterexample");

  std::string a_path;
  std::string b_path;
  double t = 0.5;
  std::string grid = "-4,-2,-1,-0.5,-0.1,0,0.1,0.5,1,2,4";
  std::string scan_out = "-";
  auto* scan_cmd = app.add_subcommand("scan-p", "Eigenvalues of F_t(p) over a p grid (CSV)");
  scan_cmd->add_option("--a", a_path, "Matrix file A")->required();
  scan_cmd->add_option("--b", b_path, "Matrix file B")->required();
  scan_cmd->add_option("--t", t, "Weight t in [0, 1]");
  scan_cmd->add_option("--p-grid", grid, "Comma-separated p values");
  scan_cmd->add_option("--out", scan_out, "CSV path ('-' for stdout)");

  double p = 1;
  auto* means_cmd = app.add_subcommand("means", "Print every mean of two matrices with norms");
  means_cmd->add_option("--a", a_path, "Matrix file A")->required();
  means_cmd->add_option("--b", b_path, "Matrix file B")->required();
  means_cmd->add_option("--t", t, "Weight t in [0, 1]");
  means_cmd->add_option("--p", p, "Power mean exponent");

  std::size_t dim = 3;
  double cond = 1;
  std::uint64_t seed = 1;
  std::string gen_out = "-";
  auto* gen_cmd = app.add_subcommand("gen", "Write a random positive definite matrix");
  gen_cmd->add_option("--dim", dim, "Dimension")->required();
  gen_cmd->add_option("--cond", cond, "Eigenvalues in [10^-c, 10^c]");
  gen_cmd->add_option("--seed", seed, "Seed");
  gen_cmd->add_option("--out", gen_out, "Output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check_cmd) return cmd_check(check);
    if (*paper_cmd) return cmd_paper_example();
    if (*scan_cmd) return cmd_scan_p(a_path, b_path, t, grid, scan_out);
    if (*means_cmd) return cmd_means(a_path, b_path, t, p);
    if (*gen_cmd) return cmd_gen(dim, cond, seed, gen_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
