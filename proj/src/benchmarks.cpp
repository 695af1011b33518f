#include "pvcast/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pvcast/time_utils.hpp"

namespace pvcast {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double measured_power(const TimeSeries& data, const DaylightCalendar& calendar, int k) {
  return data.samples.at(calendar.entries.at(static_cast<std::size_t>(k)).sample_pos).power_kw;
}

double clear_sky_at(const DaylightCalendar& calendar, int k) {
  return k < 0 ? 0.0 : calendar.entries.at(static_cast<std::size_t>(k)).clear_sky;
}

BenchmarkRun run_benchmark(BenchmarkKind kind, const TimeSeries& data,
                           const DaylightCalendar& calendar, double v0) {
  const int dim = kind == BenchmarkKind::Pvgm ? kPvgmLags : 2 * kCcdLags;
  RlsState rls;
  rls.theta = Eigen::VectorXd::Zero(dim);
  rls.weight = v0 * Eigen::MatrixXd::Identity(dim, dim);

  BenchmarkRun run;
  run.kind = kind;
  run.initial = rls.theta;
  run.coeffs.reserve(calendar.entries.size());

  for (int k = 0; k < calendar.num_indices(); ++k) {
    const int min_lag = kind == BenchmarkKind::Pvgm ? kPvgmLags : kCcdLags - 1;
    bool ok = k >= min_lag;
    if (ok) {
      Eigen::VectorXd phi(dim);
      if (kind == BenchmarkKind::Pvgm) {
        for (int i = 1; i <= kPvgmLags; ++i) phi(i - 1) = measured_power(data, calendar, k - i);
      } else {
        for (int i = 0; i < kCcdLags; ++i) {
          phi(i) = clear_sky_at(calendar, k - i);
          phi(kCcdLags + i) =
              data.samples
                  .at(calendar.entries.at(static_cast<std::size_t>(k - i)).sample_pos)
                  .cloud_cover;
        }
      }
      const double p = measured_power(data, calendar, k);
      if (phi.allFinite() && std::isfinite(p)) {
        rls_step(rls, phi, p);
      }
    }
    run.coeffs.push_back(rls.theta);
  }
  return run;
}

}  // namespace

BenchmarkRun run_pvgm(const TimeSeries& data, const DaylightCalendar& calendar, double v0) {
  return run_benchmark(BenchmarkKind::Pvgm, data, calendar, v0);
}

BenchmarkRun run_ccd(const TimeSeries& data, const DaylightCalendar& calendar, double v0) {
  return run_benchmark(BenchmarkKind::Ccd, data, calendar, v0);
}

std::vector<double> pvgm_predict_chain(const Eigen::VectorXd& a, int k_info, int j_max,
                                       const TimeSeries& data, const DaylightCalendar& calendar) {
  // chain[m - (k_info + 1)] = prediction for index m, m in (k_info, j_max].
  std::vector<double> chain;
  chain.reserve(static_cast<std::size_t>(std::max(0, j_max - k_info)));
  for (int m = k_info + 1; m <= j_max; ++m) {
    if (m - kPvgmLags < 0) {
      chain.push_back(kNan);
      continue;
    }
    double p = 0.0;
    bool valid = true;
    for (int i = 1; i <= kPvgmLags; ++i) {
      const int lag = m - i;
      double value;
      if (lag <= k_info) {
        value = measured_power(data, calendar, lag);
      } else {
        value = chain[static_cast<std::size_t>(lag - (k_info + 1))];
      }
      if (!std::isfinite(value)) {
        valid = false;
        break;
      }
      p += a(i - 1) * value;
    }
    chain.push_back(valid ? p : kNan);
  }
  return chain;
}

double pvgm_predict(int j, int k_info, const Eigen::VectorXd& a, const TimeSeries& data,
                    const DaylightCalendar& calendar) {
  if (j <= k_info) throw std::invalid_argument("prediction instant not after the cutoff");
  const auto chain = pvgm_predict_chain(a, k_info, j, data, calendar);
  return chain.at(static_cast<std::size_t>(j - (k_info + 1)));
}

double ccd_predict(int j, int k_info, const Eigen::VectorXd& b, const TimeSeries& data,
                   const DaylightCalendar& calendar, const WeatherForecastProvider& provider) {
  if (j - (kCcdLags - 1) < 0) return kNan;
  double p = 0.0;
  for (int i = 0; i < kCcdLags; ++i) {
    const int lag = j - i;
    p += b(i) * clear_sky_at(calendar, lag);
    double n;
    if (lag <= k_info) {
      n = data.samples.at(calendar.entries.at(static_cast<std::size_t>(lag)).sample_pos)
              .cloud_cover;
    } else {
      n = provider.forecast(lag, k_info).cloud_cover;
    }
    p += b(kCcdLags + i) * n;
  }
  return p;
}

namespace {

std::int64_t day_start_unix(const TimeSeries& data, int day) {
  const std::int64_t day0 = local_day_index(data.samples.front().unix_time, data.utc_offset_minutes);
  return (day0 + day - 1) * 86400 - static_cast<std::int64_t>(data.utc_offset_minutes) * 60;
}

ForecastSeries predict_over(BenchmarkKind kind, ForecastKind fkind, int period, int q, int k_info,
                            std::int64_t submission_time, const std::vector<int>& window,
                            const TimeSeries& data, const DaylightCalendar& calendar,
                            const BenchmarkRun& run, const WeatherForecastProvider& provider) {
  ForecastSeries series;
  series.kind = fkind;
  series.period = period;
  series.estimate_index = q;
  series.submission_time = submission_time;

  const Eigen::VectorXd& coeff = run.at(q);
  std::vector<double> chain;
  if (kind == BenchmarkKind::Pvgm && !window.empty()) {
    chain = pvgm_predict_chain(coeff, k_info, window.back(), data, calendar);
  }
  for (int j : window) {
    double raw;
    if (kind == BenchmarkKind::Pvgm) {
      raw = chain.at(static_cast<std::size_t>(j - (k_info + 1)));
    } else {
      raw = ccd_predict(j, k_info, coeff, data, calendar, provider);
    }
    if (!std::isfinite(raw)) continue;  // insufficient history at the series start
    const auto& entry = calendar.entries.at(static_cast<std::size_t>(j));
    ForecastEntry e;
    e.j = j;
    e.unix_time = entry.unix_time;
    e.raw_kw = raw;
    e.predicted_kw = std::max(0.0, raw);
    e.measured_kw = data.samples.at(entry.sample_pos).power_kw;
    series.entries.push_back(e);
  }
  return series;
}

}  // namespace

ForecastSeries benchmark_day_ahead(BenchmarkKind kind, int submission_day, const TimeSeries& data,
                                   const DaylightCalendar& calendar, const BenchmarkRun& run,
                                   const WeatherForecastProvider& provider,
                                   int submission_tod_minutes) {
  const int d = submission_day;
  if (d + 1 > calendar.num_days()) throw std::out_of_range("day-ahead target day outside dataset");
  if (d - 1 < 1 || calendar.day_empty(d - 1)) {
    throw std::invalid_argument("no coefficient estimate available before submission day");
  }
  const std::int64_t submission = day_start_unix(data, d) + submission_tod_minutes * 60;
  const int q = calendar.last_k(d - 1);
  int k_info = q;
  while (k_info + 1 < calendar.num_indices() &&
         calendar.entries[static_cast<std::size_t>(k_info + 1)].unix_time <= submission) {
    ++k_info;
  }
  std::vector<int> window;
  if (!calendar.day_empty(d + 1)) {
    for (int j = calendar.first_k(d + 1); j <= calendar.last_k(d + 1); ++j) window.push_back(j);
  }
  return predict_over(kind, ForecastKind::DayAhead, d + 1, q, k_info, submission, window, data,
                      calendar, run, provider);
}

ForecastSeries benchmark_hour_ahead(BenchmarkKind kind, int k, const TimeSeries& data,
                                    const DaylightCalendar& calendar, const BenchmarkRun& run,
                                    const WeatherForecastProvider& provider) {
  if (k < 0 || k >= calendar.num_indices()) {
    throw std::out_of_range("hour-ahead submission index outside calendar");
  }
  const std::vector<int> window = hour_ahead_window(k, calendar);
  return predict_over(kind, ForecastKind::HourAhead, k, k, k,
                      calendar.entries[static_cast<std::size_t>(k)].unix_time, window, data,
                      calendar, run, provider);
}

}  // namespace pvcast
