#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pvcast/estimation.hpp"
#include "pvcast/solar_geometry.hpp"

namespace pvcast {

struct WeatherPoint {
  double cloud_cover = 0.0;
  double temp_c = 0.0;
};

// Weather forecast source: What(j | k), the report for daylight index j as
// seen at index k. The evaluation protocol replays the recorded series, which
// is what ReplayWeatherProvider does.
class WeatherForecastProvider {
 public:
  virtual ~WeatherForecastProvider() = default;
  virtual WeatherPoint forecast(int j, int k) const = 0;
};

class ReplayWeatherProvider final : public WeatherForecastProvider {
 public:
  ReplayWeatherProvider(const TimeSeries& data, const DaylightCalendar& calendar)
      : data_(&data), calendar_(&calendar) {}
  WeatherPoint forecast(int j, int /*k*/) const override;

 private:
  const TimeSeries* data_;
  const DaylightCalendar* calendar_;
};

enum class ForecastKind { DayAhead, HourAhead };

struct ForecastEntry {
  int j = 0;  // daylight index of the predicted instant
  std::int64_t unix_time = 0;
  double predicted_kw = 0.0;  // clamped at zero
  double raw_kw = 0.0;        // pre-clamp model output, kept for diagnostics
  double measured_kw = 0.0;
};

struct ForecastSeries {
  ForecastKind kind = ForecastKind::DayAhead;
  int period = 0;          // target day (DA/reference) or submission index k (HA)
  int estimate_index = -1; // q: which estimate produced the series (-1: none)
  std::int64_t submission_time = 0;
  std::vector<ForecastEntry> entries;
};

// Model evaluation at one instant, clamped at zero. raw_out receives the
// unclamped value when non-null.
double predict_power(const ThetaVector& theta, double clear_sky, const WeatherPoint& weather,
                     double* raw_out = nullptr);

inline constexpr int kDefaultSubmissionTod = 6 * 60;  // 06:00 local
inline constexpr int kHourAheadLeadMinutes = 105;
inline constexpr int kHourAheadHorizonHours = 7;

// Day-ahead series submitted on day d: covers the daylight indices of day
// d+1 using the estimate frozen at the last index of day d-1.
// Throws std::out_of_range when day d+1 is outside the dataset and
// EstimationFault-free precondition violations as std::invalid_argument.
ForecastSeries day_ahead(int submission_day, const TimeSeries& data,
                         const DaylightCalendar& calendar, const EstimationRun& run,
                         const WeatherForecastProvider& provider,
                         int submission_tod_minutes = kDefaultSubmissionTod);

// Hour-ahead series computed at daylight index k with the estimate at k. The
// operating window starts at the first full-hour boundary at least 105
// minutes after k and spans up to 7 hours of the same day's light.
// An empty window (k near dusk) yields an empty series.
ForecastSeries hour_ahead(int k, const TimeSeries& data, const DaylightCalendar& calendar,
                          const EstimationRun& run, const WeatherForecastProvider& provider);

// One-day-ahead naive prediction for a target day: yesterday's measurement at
// the same time of day; entries without a previous-day sample are skipped.
ForecastSeries naive_day_ahead(int target_day, const TimeSeries& data,
                               const DaylightCalendar& calendar);

// Operating window shared with the reference predictors: daylight indices of
// k's day inside [start, start + 7 h), where start is the first full-hour
// boundary >= time(k) + 105 min.
std::vector<int> hour_ahead_window(int k, const DaylightCalendar& calendar);

// Forecast export: kind, period, j, timestamp, predicted, measured, q.
void write_forecast_csv(std::span<const ForecastSeries> series, const std::string& model,
                        int utc_offset_minutes, const std::string& path);

}  // namespace pvcast
