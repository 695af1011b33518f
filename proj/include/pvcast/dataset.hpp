#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pvcast {

// One record of the canonical power-weather series: measured power, air
// temperature report and cloud cover report, all referred to the same instant.
struct Sample {
  std::int64_t unix_time = 0;
  double power_kw = 0.0;
  double temp_c = 0.0;
  double cloud_cover = 0.0;  // fraction of covered sky in [0, 1]
};

struct TimeSeries {
  std::vector<Sample> samples;  // strictly increasing timestamps
  int step_minutes = 60;
  int utc_offset_minutes = 0;
  // true when each sample is an average over [t, t + step) rather than an
  // instantaneous reading; geometry is then evaluated at the interval middle
  bool interval_averaged = false;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
};

// Canonical dataset CSV: header "timestamp,power_kw,temp_c,cci", ISO-8601
// timestamps with explicit offset. Both the simulator export and the ingest
// output use this exact schema.
TimeSeries read_dataset_csv(const std::string& path);
void write_dataset_csv(const TimeSeries& data, const std::string& path);

// Regular sampling grid covering `days` civil days from the given local
// midnight. step_minutes must divide 24 h.
TimeSeries make_time_grid(int year, int month, int day, int days, int step_minutes,
                          int utc_offset_minutes);

}  // namespace pvcast
