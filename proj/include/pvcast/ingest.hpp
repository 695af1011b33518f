#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pvcast/dataset.hpp"

namespace pvcast {

// Plant-side record: hourly averaged measured power plus the day-ahead air
// temperature forecast for the same hour.
struct PowerRecord {
  std::int64_t unix_time = 0;
  double power_kw = 0.0;
  double temp_c = 0.0;
};

// Weather-service cloud cover report; sampling is irregular.
struct CciRecord {
  std::int64_t unix_time = 0;
  double cloud_cover = 0.0;
};

struct IngestOptions {
  bool cci_in_okta = false;  // reports given as 0..8 okta instead of fractions
};

struct QualityReport {
  std::size_t power_rows = 0;
  std::size_t cci_rows = 0;
  std::size_t parse_errors_power = 0;
  std::size_t parse_errors_cci = 0;
  std::size_t range_violations = 0;     // cloud cover outside [0, 1]
  std::size_t negative_power_rows = 0;  // kept, but logged
  std::size_t merged_hours = 0;
  std::size_t dropped_no_cci = 0;       // hours with power but no report
  std::size_t averaged_hours = 0;       // hours with more than one report
};

struct IngestResult {
  TimeSeries data;
  QualityReport report;
};

// Merges the two sources into one hourly series: hours with several cloud
// cover reports take their mean, hours without any are dropped. Inputs may
// arrive in any order.
IngestResult merge_hourly(std::vector<PowerRecord> power, std::vector<CciRecord> cci,
                          const IngestOptions& options, int utc_offset_minutes);

// File front-end. Power CSV header: "timestamp,power_kw,temp_c"; cloud cover
// CSV header: "timestamp,cci". Unparseable rows are counted and skipped.
IngestResult ingest_files(const std::string& power_csv, const std::string& cci_csv,
                          const IngestOptions& options);

void write_quality_report(const QualityReport& report, const std::string& path);

}  // namespace pvcast
