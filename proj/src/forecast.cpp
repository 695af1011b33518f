#include "pvcast/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pvcast/time_utils.hpp"

namespace pvcast {

WeatherPoint ReplayWeatherProvider::forecast(int j, int /*k*/) const {
  const auto& entry = calendar_->entries.at(static_cast<std::size_t>(j));
  const Sample& s = data_->samples.at(entry.sample_pos);
  return {s.cloud_cover, s.temp_c};
}

double predict_power(const ThetaVector& theta, double clear_sky, const WeatherPoint& weather,
                     double* raw_out) {
  const double raw = regressor(clear_sky, weather.temp_c, weather.cloud_cover).dot(theta);
  if (raw_out != nullptr) *raw_out = raw;
  return std::max(0.0, raw);
}

namespace {

std::int64_t day_start_unix(const TimeSeries& data, int day) {
  // Local midnight of the series day `day` (1-based).
  const std::int64_t first = data.samples.front().unix_time;
  const std::int64_t day0 = local_day_index(first, data.utc_offset_minutes);
  const std::int64_t target_day = day0 + day - 1;
  return target_day * 86400 - static_cast<std::int64_t>(data.utc_offset_minutes) * 60;
}

ForecastEntry make_entry(int j, const TimeSeries& data, const DaylightCalendar& calendar,
                         const ThetaVector& theta, const WeatherForecastProvider& provider,
                         int k) {
  const auto& entry = calendar.entries.at(static_cast<std::size_t>(j));
  ForecastEntry out;
  out.j = j;
  out.unix_time = entry.unix_time;
  const WeatherPoint w = provider.forecast(j, k);
  out.predicted_kw = predict_power(theta, entry.clear_sky, w, &out.raw_kw);
  out.measured_kw = data.samples.at(entry.sample_pos).power_kw;
  return out;
}

}  // namespace

ForecastSeries day_ahead(int submission_day, const TimeSeries& data,
                         const DaylightCalendar& calendar, const EstimationRun& run,
                         const WeatherForecastProvider& provider, int submission_tod_minutes) {
  const int d = submission_day;
  if (d + 1 > calendar.num_days()) {
    throw std::out_of_range("day-ahead target day outside dataset");
  }
  if (d - 1 < 1 || calendar.day_empty(d - 1)) {
    throw std::invalid_argument("no parameter estimate available before submission day");
  }
  if (calendar.day_empty(d + 1)) {
    ForecastSeries empty;
    empty.kind = ForecastKind::DayAhead;
    empty.period = d + 1;
    empty.estimate_index = calendar.last_k(d - 1);
    empty.submission_time = day_start_unix(data, d) + submission_tod_minutes * 60;
    return empty;
  }

  ForecastSeries series;
  series.kind = ForecastKind::DayAhead;
  series.period = d + 1;
  series.estimate_index = calendar.last_k(d - 1);  // frozen the evening before submission
  series.submission_time = day_start_unix(data, d) + submission_tod_minutes * 60;

  const ThetaVector theta = run.theta_at(series.estimate_index);
  // Lag/report cutoff as of the submission instant.
  int k_info = series.estimate_index;
  while (k_info + 1 < calendar.num_indices() &&
         calendar.entries[static_cast<std::size_t>(k_info + 1)].unix_time <=
             series.submission_time) {
    ++k_info;
  }
  for (int j = calendar.first_k(d + 1); j <= calendar.last_k(d + 1); ++j) {
    series.entries.push_back(make_entry(j, data, calendar, theta, provider, k_info));
  }
  return series;
}

std::vector<int> hour_ahead_window(int k, const DaylightCalendar& calendar) {
  const auto& at = calendar.entries.at(static_cast<std::size_t>(k));
  const int offset = calendar.utc_offset_minutes;
  // First full-hour boundary at least the submission lead ahead of k.
  const std::int64_t local = at.unix_time + static_cast<std::int64_t>(offset) * 60;
  const std::int64_t lead = local + kHourAheadLeadMinutes * 60;
  const std::int64_t start_local = ((lead + 3599) / 3600) * 3600;
  const std::int64_t start = start_local - static_cast<std::int64_t>(offset) * 60;
  const std::int64_t end = start + static_cast<std::int64_t>(kHourAheadHorizonHours) * 3600;

  std::vector<int> window;
  for (int j = k + 1; j < calendar.num_indices(); ++j) {
    const auto& e = calendar.entries[static_cast<std::size_t>(j)];
    if (e.day != at.day) break;  // the horizon never crosses into the next day
    if (e.unix_time < start) continue;
    if (e.unix_time >= end) break;
    window.push_back(j);
  }
  return window;
}

ForecastSeries hour_ahead(int k, const TimeSeries& data, const DaylightCalendar& calendar,
                          const EstimationRun& run, const WeatherForecastProvider& provider) {
  if (k < 0 || k >= calendar.num_indices()) {
    throw std::out_of_range("hour-ahead submission index outside calendar");
  }
  ForecastSeries series;
  series.kind = ForecastKind::HourAhead;
  series.period = k;
  series.estimate_index = k;  // most recent estimate available
  series.submission_time = calendar.entries[static_cast<std::size_t>(k)].unix_time;

  const ThetaVector theta = run.theta_at(k);
  for (int j : hour_ahead_window(k, calendar)) {
    series.entries.push_back(make_entry(j, data, calendar, theta, provider, k));
  }
  return series;
}

ForecastSeries naive_day_ahead(int target_day, const TimeSeries& data,
                               const DaylightCalendar& calendar) {
  if (target_day < 1 || target_day > calendar.num_days()) {
    throw std::out_of_range("naive predictor target day outside dataset");
  }
  ForecastSeries series;
  series.kind = ForecastKind::DayAhead;
  series.period = target_day;
  series.estimate_index = -1;
  if (calendar.day_empty(target_day)) return series;
  series.submission_time =
      calendar.entries[static_cast<std::size_t>(calendar.first_k(target_day))].unix_time;

  for (int j = calendar.first_k(target_day); j <= calendar.last_k(target_day); ++j) {
    const auto& entry = calendar.entries[static_cast<std::size_t>(j)];
    const std::int64_t previous = entry.unix_time - 86400;
    // Same time of day yesterday, if that sample exists.
    const auto& samples = data.samples;
    auto it = std::lower_bound(samples.begin(), samples.end(), previous,
                               [](const Sample& s, std::int64_t t) { return s.unix_time < t; });
    if (it == samples.end() || it->unix_time != previous) continue;
    ForecastEntry e;
    e.j = j;
    e.unix_time = entry.unix_time;
    e.raw_kw = it->power_kw;
    e.predicted_kw = std::max(0.0, e.raw_kw);
    e.measured_kw = samples.at(entry.sample_pos).power_kw;
    series.entries.push_back(e);
  }
  return series;
}

void write_forecast_csv(std::span<const ForecastSeries> series, const std::string& model,
                        int utc_offset_minutes, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "model,kind,period,j,timestamp,predicted_kw,measured_kw,q\n";
  char buf[64];
  for (const ForecastSeries& s : series) {
    const char* kind = s.kind == ForecastKind::DayAhead ? "da" : "ha";
    for (const ForecastEntry& e : s.entries) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", e.predicted_kw, e.measured_kw);
      out << model << ',' << kind << ',' << s.period << ',' << e.j << ','
          << format_iso8601(e.unix_time, utc_offset_minutes) << ',' << buf << ','
          << s.estimate_index << '\n';
    }
  }
}

}  // namespace pvcast
