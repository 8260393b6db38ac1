#pragma once

#include <string>
#include <vector>

#include "toralent/experiment.hpp"

namespace toralent {

/// CSV header; wall_time is last so byte comparisons can drop one column.
inline constexpr const char* kCsvHeader = "experiment_id,config_hash,operation,t,quantity,value,residual,flags,wall_time";

/// One CSV line per record in record order. Numbers use 17 significant
/// digits; missing values (summary t, failed points) are empty fields.
std::string records_csv(const std::vector<ResultRecord>& records);

/// One panel per quantity (records with a numeric t), value against t,
/// quantities in first-appearance order.
std::string records_svg(const std::vector<ResultRecord>& records);

struct ReportFiles {
  std::string csv;
  std::string svg;
};

/// Writes <dir>/<stem>.csv and <dir>/<stem>.svg, creating dir. Throws OutputError.
ReportFiles emit_report(const std::vector<ResultRecord>& records, const std::string& dir, const std::string& stem = "report");

}  // namespace toralent
