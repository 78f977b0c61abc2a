#pragma once

// Campaign report serialization.
//
// JSON lines: one object per (property, instance) in instance-major order,
// then one summary object. Wall-clock time is deliberately not written so
// that identical configurations give byte-identical files.
//
// CSV summary: property_id,pass,fail,marginal,skipped,description

#include <ostream>

#include "matmeans/suite.hpp"

namespace matmeans {

void write_jsonl(std::ostream& out, const CampaignReport& report);
void write_csv_summary(std::ostream& out, const CampaignReport& report);

}  // namespace matmeans
