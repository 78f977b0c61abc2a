#include "matmeans/report.hpp"

#include <cmath>
#include <json.hpp>

namespace matmeans {

namespace {

using Json = nlohmann::ordered_json;

Json number(Real x) {
  const double d = static_cast<double>(x);
  if (!std::isfinite(d)) return nullptr;
  return d;
}

Json optional_number(const std::optional<double>& x) {
  if (!x) return nullptr;
  return *x;
}

Json result_json(const PropertyResult& r) {
  Json j;
  j["property_id"] = property_name(r.id);
  j["seed"] = r.seed;
  j["dim"] = r.dim;
  j["cond_exponent"] = r.cond_exponent;
  j["t"] = optional_number(r.witness.t);
  j["p"] = optional_number(r.witness.p);
  j["norm_id"] = r.witness.norm_id;
  j["check"] = r.witness.check;
  j["status"] = status_name(r.status);
  j["marginal"] = r.marginal;
  j["worst_margin"] = number(r.worst_margin);
  j["lhs"] = number(r.witness.lhs);
  j["rhs"] = number(r.witness.rhs);
  j["checks"] = r.checks;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json config_json(const CampaignConfig& c) {
  Json j;
  j["master_seed"] = c.master_seed;
  j["count"] = c.count;
  j["dim_min"] = c.dim_min;
  j["dim_max"] = c.dim_max;
  j["cond_max"] = c.cond_max;
  j["t_values"] = c.t_values;
  j["p_grid"] = c.p_grid;
  j["m_values"] = c.m_values;
  Json props = Json::array();
  for (PropertyId id : c.properties) props.push_back(property_name(id));
  j["properties"] = props;
  j["tol"] = static_cast<double>(c.tol);
  return j;
}

}  // namespace

void write_jsonl(std::ostream& out, const CampaignReport& report) {
  for (const auto& r : report.results) out << result_json(r).dump() << '\n';

  Json summary;
  summary["summary"] = true;
  summary["config"] = config_json(report.config);
  Json counts = Json::object();
  for (const auto& [id, c] : report.counts) {
    counts[property_name(id)] = {
        {"pass", c.pass}, {"fail", c.fail}, {"marginal", c.marginal}, {"skipped", c.skipped}};
  }
  summary["counts"] = counts;
  summary["failures"] = report.failures();
  out << summary.dump() << '\n';
}

void write_csv_summary(std::ostream& out, const CampaignReport& report) {
  out << "property_id,pass,fail,marginal,skipped,description\n";
  for (const auto& [id, c] : report.counts) {
    out << property_name(id) << ',' << c.pass << ',' << c.fail << ',' << c.marginal << ','
        << c.skipped << ",\"" << property_description(id) << "\"\n";
  }
}

}  // namespace matmeans
