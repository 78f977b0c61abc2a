#include <doctest.h>

#include <cmath>
#include <sstream>

#include "matmeans/report.hpp"
#include "matmeans/spectra.hpp"
#include "matmeans/suite.hpp"

using namespace matmeans;

TEST_CASE("property ids") {
  CHECK(parse_property_id("P1") == PropertyId::P1);
  CHECK(parse_property_id("p15") == PropertyId::P15);
  CHECK_FALSE(parse_property_id("P0").has_value());
  CHECK_FALSE(parse_property_id("P16").has_value());
  CHECK_FALSE(parse_property_id("X3").has_value());
  for (PropertyId id : kAllProperties) {
    CHECK(parse_property_id(property_name(id)) == id);
    CHECK_FALSE(property_description(id).empty());
  }
}

TEST_CASE("the 2x2 counterexample") {
  const auto v = paper_counterexample();
  CHECK(std::fabs(static_cast<double>(v.lambda2_geo) - 1) <= 1e-12);
  CHECK(std::fabs(static_cast<double>(v.lambda2_logeuc) - 0.9806) <= 5e-4);
  CHECK(v.lambda2_logeuc < v.lambda2_geo);
  CHECK(std::fabs(static_cast<double>(v.det_geo) - 3) <= 1e-8);
  InstanceSpec spec;
  spec.dim = 2;
  const auto r = check_property(PropertyId::P6, spec);
  CHECK(r.status == Status::Pass);
  CHECK(r.checks > 0);
}

TEST_CASE("P1 with A = B has zero margins") {
  InstanceSpec spec;
  spec.seed = 4;
  spec.dim = 3;
  spec.cond_exponent = 1;
  const PdMatrix a = random_pd(3, 1, 4);
  const auto r = check_property(PropertyId::P1, make_instance(spec, a, a));
  CHECK(r.status == Status::Pass);
  CHECK(std::fabs(static_cast<double>(r.worst_margin)) <= 1e-12);
}

TEST_CASE("P4 on commuting diagonals") {
  InstanceSpec spec;
  spec.dim = 3;
  const PdMatrix a(Matrix::diagonal({1, 4, 9}));
  const PdMatrix b(Matrix::diagonal({9, 1, 2}));
  const auto r = check_property(PropertyId::P4, make_instance(spec, a, b));
  CHECK(r.status == Status::Pass);
  // the geometric and log-Euclidean means coincide for commuting inputs, so
  // the first link of the chain is tight
  CHECK(std::fabs(static_cast<double>(r.worst_margin)) <= 1e-12);
}

TEST_CASE("every property passes on a moderate instance") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.dim = 2 + seed;
    spec.cond_exponent = 1;
    spec.m = 3;
    const Instance in = make_instance(spec);
    for (PropertyId id : kAllProperties) {
      const auto r = check_property(id, in);
      INFO(property_name(id), " seed ", seed, " ", r.witness.check, " ", r.note);
      CHECK(r.status == Status::Pass);
    }
  }
}

TEST_CASE("skipped and invalid specs") {
  InstanceSpec spec;
  spec.dim = 3;
  spec.p_grid = {-2, -1};
  const auto r = check_property(PropertyId::P10, spec);
  CHECK(r.status == Status::Skipped);
  CHECK(r.checks == 0);

  InstanceSpec bad;
  bad.dim = 1;
  CHECK_THROWS_AS(check_property(PropertyId::P1, bad), DomainError);
  bad.dim = 3;
  bad.t_values = {1.5};
  CHECK_THROWS_AS(check_property(PropertyId::P1, bad), DomainError);
  bad.t_values = {0.5};
  bad.p_grid = {1, -1};
  CHECK_THROWS_AS(check_property(PropertyId::P1, bad), DomainError);
}

TEST_CASE("campaign instances") {
  CampaignConfig cfg;
  cfg.master_seed = 10;
  const auto s0 = campaign_instance(cfg, 0);
  const auto s7 = campaign_instance(cfg, 7);
  CHECK(s0.seed == 10);
  CHECK(s7.seed == 17);
  CHECK(s0.dim == 2);
  CHECK(s7.dim == 4);
  CHECK(s0.m == 2);
  CHECK(s7.m == 3);
  CHECK(s7.cond_exponent >= 0);
  CHECK(s7.cond_exponent <= cfg.cond_max);
  CHECK(campaign_instance(cfg, 7).cond_exponent == s7.cond_exponent);
}

TEST_CASE("empty property selection") {
  CampaignConfig cfg;
  cfg.count = 5;
  cfg.properties.clear();
  const auto rep = run_campaign(cfg);
  CHECK(rep.results.empty());
  CHECK(rep.failures() == 0);
}

TEST_CASE("report is identical for any job count") {
  CampaignConfig cfg;
  cfg.count = 24;
  cfg.master_seed = 99;
  cfg.jobs = 1;
  const auto r1 = run_campaign(cfg);
  cfg.jobs = 3;
  const auto r3 = run_campaign(cfg);
  std::ostringstream o1;
  std::ostringstream o3;
  write_jsonl(o1, r1);
  write_jsonl(o3, r3);
  CHECK(o1.str() == o3.str());
  CHECK(r1.results.size() == 24 * kAllProperties.size());
  CHECK(r1.failures() == 0);

  std::ostringstream csv;
  write_csv_summary(csv, r1);
  CHECK(csv.str().rfind("property_id,pass,fail,marginal,skipped,description\n", 0) == 0);
}
