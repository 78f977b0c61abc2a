#pragma once

// Property catalogue: every norm, eigenvalue and majorization inequality
// about the means, checked numerically on seeded random instances.
//
// Each property evaluates a list of sub-inequalities. A sub-inequality
// lhs <= rhs contributes the normalized slack
//
//     margin = (rhs - lhs) / (1 + max(|lhs|, |rhs|))
//
// and an equality contributes -|rhs - lhs| / (1 + max(|lhs|, |rhs|)). The
// property passes iff its worst (smallest) margin is >= -tolerance.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matmeans/densela.hpp"
#include "matmeans/means.hpp"

namespace matmeans {

enum class PropertyId {
  P1 = 1,  // lambda_j(F_t(p)) increasing in p
  P2,      // |||A #_t B||| <= |||logEuc||| <= |||F_t(p)|||, p > 0
  P3,      // ... with the sandwich term between logEuc and F_t(p)
  P4,      // five-term chain at p = 1
  P5,      // log-majorization chain and the product spectral identity
  P6,      // the 2x2 pair where pointwise eigenvalue domination fails
  P7,      // Lee endpoint at t = 1/2
  P8,      // compound of the geometric mean
  P9,      // multi-matrix monotonicity, Hiai-Zhan decrease, Bhatia-Kittaneh
  P10,     // multi-matrix logEuc below the power means, p > 0
  P11,     // block PSD characterizations
  P12,     // 4|||AB||| <= |||(A+B)^2||| and its extension
  P13,     // Matharu-Aujla, Aujla and Kosem
  P14,     // Bhatia-Davis
  P15,     // Loewner comparison and Golden-Thompson
};

inline constexpr std::array<PropertyId, 15> kAllProperties = {
    PropertyId::P1,  PropertyId::P2,  PropertyId::P3,  PropertyId::P4,  PropertyId::P5,
    PropertyId::P6,  PropertyId::P7,  PropertyId::P8,  PropertyId::P9,  PropertyId::P10,
    PropertyId::P11, PropertyId::P12, PropertyId::P13, PropertyId::P14, PropertyId::P15};

std::string property_name(PropertyId id);
std::optional<PropertyId> parse_property_id(std::string_view s);
std::string_view property_description(PropertyId id);

inline constexpr Real kDefaultSuiteTol = 1e-8L;
inline constexpr Real kCompoundTol = 1e-7L;

struct InstanceSpec {
  std::uint64_t seed = 0;
  std::size_t dim = 2;
  double cond_exponent = 0;
  std::vector<double> t_values{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> p_grid{-4, -2, -1, -0.5, -0.1, 0, 0.1, 0.5, 1, 2, 4};
  std::size_t m = 2;

  /// Throws DomainError on dim < 2, t outside [0, 1], unsorted p_grid or m < 1.
  void validate() const;
};

/// The matrices a property is evaluated on. `make_instance` derives them from
/// `spec.seed`; tests may build one by hand.
struct Instance {
  InstanceSpec spec;
  PdMatrix a;
  PdMatrix b;
  std::vector<PdMatrix> family;  // A_1..A_m for the multi-matrix properties
  WeightVector weights;
  SymMatrix x;                   // symmetric, indefinite in general
};

Instance make_instance(const InstanceSpec& spec);

/// Instance with explicit a, b; the family is {a, b} with equal weights and
/// x is drawn from `spec.seed`.
Instance make_instance(const InstanceSpec& spec, const PdMatrix& a, const PdMatrix& b);

enum class Status { Pass, Fail, Skipped };
std::string_view status_name(Status s);

struct Witness {
  std::string check;            // which sub-inequality
  std::optional<double> t;
  std::optional<double> p;
  std::string norm_id;          // KyFan:k, Schatten:p, lambda:j, logprefix:k, det, trace, ...
  Real lhs = 0;
  Real rhs = 0;
};

struct PropertyResult {
  PropertyId id = PropertyId::P1;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  double cond_exponent = 0;
  Status status = Status::Skipped;
  /// Passed, but with a negative margin beyond a tenth of the tolerance.
  bool marginal = false;
  Real worst_margin = 0;
  Real tolerance = 0;
  std::size_t checks = 0;
  Witness witness;
  std::string note;
};

/// Throws DomainError for an invalid instance spec.
PropertyResult check_property(PropertyId id, const Instance& instance,
                              Real tol = kDefaultSuiteTol);
PropertyResult check_property(PropertyId id, const InstanceSpec& spec,
                              Real tol = kDefaultSuiteTol);

struct CampaignConfig {
  std::uint64_t master_seed = 1;
  std::size_t count = 100;
  std::size_t dim_min = 2;
  std::size_t dim_max = 6;
  /// Instances draw cond_exponent uniformly from [0, cond_max]; the
  /// condition number of each matrix is then at most 10^(2 cond_max).
  double cond_max = 1.5;
  std::vector<double> t_values{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> p_grid{-4, -2, -1, -0.5, -0.1, 0, 0.1, 0.5, 1, 2, 4};
  std::vector<std::size_t> m_values{2, 3, 4};
  std::vector<PropertyId> properties{kAllProperties.begin(), kAllProperties.end()};
  Real tol = kDefaultSuiteTol;
  unsigned jobs = 1;

  void validate() const;
};

/// Instance i uses seed master_seed + i, dim cycling through the range and
/// m cycling through m_values.
InstanceSpec campaign_instance(const CampaignConfig& config, std::size_t i);

struct PropertyCounts {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t marginal = 0;
  std::size_t skipped = 0;
};

struct CampaignReport {
  CampaignConfig config;
  /// Instance-major: for each instance, one result per selected property.
  std::vector<PropertyResult> results;
  std::vector<std::pair<PropertyId, PropertyCounts>> counts;
  std::chrono::duration<double> wall_clock{0};

  std::size_t failures() const;
  const PropertyCounts& counts_for(PropertyId id) const;
};

/// Evaluates every selected property on every instance. Never stops on a
/// failing check; an exception inside one check is recorded as a failure.
/// Output is identical for any number of jobs.
CampaignReport run_campaign(const CampaignConfig& config);

struct CounterexampleValues {
  Real lambda2_geo = 0;     // lambda_2(A #_{1/2} B)
  Real lambda2_logeuc = 0;  // lambda_2(exp((log A + log B)/2))
  Real lambda1_geo = 0;
  Real det_geo = 0;
};

/// A = diag(2, 1), B = [[3, 3], [3, 9/2]].
PdMatrix counterexample_a();
PdMatrix counterexample_b();
CounterexampleValues paper_counterexample();

}  // namespace matmeans
