#include "pvcast/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "pvcast/csv.hpp"
#include "pvcast/time_utils.hpp"

namespace pvcast {

IngestResult merge_hourly(std::vector<PowerRecord> power, std::vector<CciRecord> cci,
                          const IngestOptions& options, int utc_offset_minutes) {
  IngestResult result;
  result.report.power_rows = power.size();
  result.report.cci_rows = cci.size();

  std::sort(power.begin(), power.end(),
            [](const PowerRecord& a, const PowerRecord& b) { return a.unix_time < b.unix_time; });

  // Hour bucket -> (sum, count) of in-range cloud cover reports.
  std::map<std::int64_t, std::pair<double, int>> cci_by_hour;
  for (const CciRecord& r : cci) {
    double n = r.cloud_cover;
    if (options.cci_in_okta) n /= 8.0;
    if (n < 0.0 || n > 1.0) {
      ++result.report.range_violations;
      continue;
    }
    const std::int64_t h = r.unix_time >= 0 ? r.unix_time / 3600 : (r.unix_time - 3599) / 3600;
    auto& bucket = cci_by_hour[h];
    bucket.first += n;
    bucket.second += 1;
  }

  result.data.step_minutes = 60;
  result.data.utc_offset_minutes = utc_offset_minutes;
  result.data.interval_averaged = true;
  std::int64_t prev = std::numeric_limits<std::int64_t>::min();
  for (const PowerRecord& r : power) {
    if (r.unix_time == prev) continue;  // duplicate hour, first record wins
    prev = r.unix_time;
    if (r.power_kw < 0.0) ++result.report.negative_power_rows;
    const std::int64_t h = r.unix_time >= 0 ? r.unix_time / 3600 : (r.unix_time - 3599) / 3600;
    const auto it = cci_by_hour.find(h);
    if (it == cci_by_hour.end()) {
      ++result.report.dropped_no_cci;
      continue;
    }
    if (it->second.second > 1) ++result.report.averaged_hours;
    Sample s;
    s.unix_time = r.unix_time;
    s.power_kw = r.power_kw;
    s.temp_c = r.temp_c;
    s.cloud_cover = it->second.first / it->second.second;
    result.data.samples.push_back(s);
  }
  result.report.merged_hours = result.data.samples.size();
  return result;
}

namespace {

bool parse_double(const std::string& text, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

IngestResult ingest_files(const std::string& power_csv, const std::string& cci_csv,
                          const IngestOptions& options) {
  const CsvTable pt = read_csv(power_csv);
  const CsvTable ct = read_csv(cci_csv);
  const int p_ts = pt.column("timestamp");
  const int p_p = pt.column("power_kw");
  const int p_t = pt.column("temp_c");
  const int c_ts = ct.column("timestamp");
  const int c_n = ct.column("cci");
  if (p_ts < 0 || p_p < 0 || p_t < 0) {
    throw std::runtime_error("power CSV must have columns timestamp,power_kw,temp_c");
  }
  if (c_ts < 0 || c_n < 0) {
    throw std::runtime_error("cloud cover CSV must have columns timestamp,cci");
  }

  std::size_t parse_errors_power = 0;
  std::size_t parse_errors_cci = 0;
  int utc_offset = 0;
  bool have_offset = false;

  std::vector<PowerRecord> power;
  for (const auto& row : pt.rows) {
    PowerRecord r;
    int offset = 0;
    try {
      r.unix_time = parse_iso8601(row.at(static_cast<std::size_t>(p_ts)), &offset);
    } catch (const std::exception&) {
      ++parse_errors_power;
      continue;
    }
    if (!parse_double(row.at(static_cast<std::size_t>(p_p)), r.power_kw) ||
        !parse_double(row.at(static_cast<std::size_t>(p_t)), r.temp_c)) {
      ++parse_errors_power;
      continue;
    }
    if (!have_offset) {
      utc_offset = offset;
      have_offset = true;
    }
    power.push_back(r);
  }

  std::vector<CciRecord> cci;
  for (const auto& row : ct.rows) {
    CciRecord r;
    try {
      r.unix_time = parse_iso8601(row.at(static_cast<std::size_t>(c_ts)));
    } catch (const std::exception&) {
      ++parse_errors_cci;
      continue;
    }
    if (!parse_double(row.at(static_cast<std::size_t>(c_n)), r.cloud_cover)) {
      ++parse_errors_cci;
      continue;
    }
    cci.push_back(r);
  }

  IngestResult result = merge_hourly(std::move(power), std::move(cci), options, utc_offset);
  result.report.power_rows = pt.rows.size();
  result.report.cci_rows = ct.rows.size();
  result.report.parse_errors_power = parse_errors_power;
  result.report.parse_errors_cci = parse_errors_cci;
  return result;
}

void write_quality_report(const QualityReport& r, const std::string& path) {
  nlohmann::json j;
  j["power_rows"] = r.power_rows;
  j["cci_rows"] = r.cci_rows;
  j["parse_errors_power"] = r.parse_errors_power;
  j["parse_errors_cci"] = r.parse_errors_cci;
  j["range_violations"] = r.range_violations;
  j["negative_power_rows"] = r.negative_power_rows;
  j["merged_hours"] = r.merged_hours;
  j["dropped_no_cci"] = r.dropped_no_cci;
  j["averaged_hours"] = r.averaged_hours;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace pvcast
