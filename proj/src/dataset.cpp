#include "pvcast/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pvcast/csv.hpp"
#include "pvcast/time_utils.hpp"

namespace pvcast {

TimeSeries read_dataset_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const int c_ts = table.column("timestamp");
  const int c_p = table.column("power_kw");
  const int c_t = table.column("temp_c");
  const int c_n = table.column("cci");
  if (c_ts < 0 || c_p < 0 || c_t < 0 || c_n < 0) {
    throw std::runtime_error("dataset CSV missing required columns in " + path);
  }
  TimeSeries out;
  bool have_offset = false;
  for (const auto& row : table.rows) {
    Sample s;
    int offset = 0;
    s.unix_time = parse_iso8601(row.at(static_cast<std::size_t>(c_ts)), &offset);
    if (!have_offset) {
      out.utc_offset_minutes = offset;
      have_offset = true;
    }
    s.power_kw = std::stod(row.at(static_cast<std::size_t>(c_p)));
    s.temp_c = std::stod(row.at(static_cast<std::size_t>(c_t)));
    s.cloud_cover = std::stod(row.at(static_cast<std::size_t>(c_n)));
    out.samples.push_back(s);
  }
  if (out.samples.size() >= 2) {
    const std::int64_t dt = out.samples[1].unix_time - out.samples[0].unix_time;
    if (dt > 0 && dt % 60 == 0) out.step_minutes = static_cast<int>(dt / 60);
  }
  // hourly canonical datasets are interval averages (scenario exports and
  // plant records alike); sub-hourly ones are instantaneous readings
  out.interval_averaged = out.step_minutes >= 60;
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    if (out.samples[i].unix_time <= out.samples[i - 1].unix_time) {
      throw std::runtime_error("dataset timestamps not strictly increasing in " + path);
    }
  }
  return out;
}

void write_dataset_csv(const TimeSeries& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "timestamp,power_kw,temp_c,cci\n";
  char buf[128];
  for (const Sample& s : data.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", s.power_kw, s.temp_c, s.cloud_cover);
    out << format_iso8601(s.unix_time, data.utc_offset_minutes) << ',' << buf << '\n';
  }
}

TimeSeries make_time_grid(int year, int month, int day, int days, int step_minutes,
                          int utc_offset_minutes) {
  if (days <= 0) throw std::invalid_argument("time grid needs at least one day");
  if (step_minutes <= 0 || (24 * 60) % step_minutes != 0) {
    throw std::invalid_argument("step must divide 24 h");
  }
  TimeSeries out;
  out.step_minutes = step_minutes;
  out.utc_offset_minutes = utc_offset_minutes;
  const std::int64_t start = to_unix({year, month, day, 0, 0, 0}, utc_offset_minutes);
  const int per_day = 24 * 60 / step_minutes;
  out.samples.reserve(static_cast<std::size_t>(days) * static_cast<std::size_t>(per_day));
  for (int d = 0; d < days; ++d) {
    for (int i = 0; i < per_day; ++i) {
      Sample s;
      s.unix_time = start + (static_cast<std::int64_t>(d) * 24 * 60 + i * step_minutes) * 60;
      out.samples.push_back(s);
    }
  }
  return out;
}

}  // namespace pvcast
