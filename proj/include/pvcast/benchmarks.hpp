#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pvcast/estimation.hpp"
#include "pvcast/forecast.hpp"
#include "pvcast/solar_geometry.hpp"

namespace pvcast {

// Reference predictors estimated online by least squares in the same
// recursive framework as the plant models. Lags are taken in daylight-index
// space, which is contiguous across days, so a 12-hour regression horizon can
// reach into the previous day.
inline constexpr int kPvgmLags = 12;  // AR model on generated power
inline constexpr int kCcdLags = 3;    // ARX: clear-sky irradiance and cloud cover, lags 0..2
inline constexpr double kBenchmarkInitialWeight = 10.0;

enum class BenchmarkKind { Pvgm, Ccd };

struct BenchmarkRun {
  BenchmarkKind kind = BenchmarkKind::Pvgm;
  Eigen::VectorXd initial;                // zero coefficients
  std::vector<Eigen::VectorXd> coeffs;    // after processing daylight index k
  const Eigen::VectorXd& at(int k) const {
    return k < 0 ? initial : coeffs.at(static_cast<std::size_t>(k));
  }
};

// One RLS step per daylight sample using realized (measured) regressors;
// indices without enough history leave the coefficients untouched.
BenchmarkRun run_pvgm(const TimeSeries& data, const DaylightCalendar& calendar,
                      double v0 = kBenchmarkInitialWeight);
BenchmarkRun run_ccd(const TimeSeries& data, const DaylightCalendar& calendar,
                     double v0 = kBenchmarkInitialWeight);

// Recursive multi-step AR prediction: lag terms use measured power up to the
// information cutoff k and previously predicted values beyond it. Indices
// whose lags reach before the series start are skipped (NaN).
std::vector<double> pvgm_predict_chain(const Eigen::VectorXd& a, int k_info, int j_max,
                                       const TimeSeries& data, const DaylightCalendar& calendar);
double pvgm_predict(int j, int k_info, const Eigen::VectorXd& a, const TimeSeries& data,
                    const DaylightCalendar& calendar);

// ARX prediction from clear-sky irradiance and cloud cover lags; cloud cover
// beyond the cutoff comes from the forecast provider.
double ccd_predict(int j, int k_info, const Eigen::VectorXd& b, const TimeSeries& data,
                   const DaylightCalendar& calendar, const WeatherForecastProvider& provider);

// Benchmark forecasts through the same DA/HA windows as the plant models.
ForecastSeries benchmark_day_ahead(BenchmarkKind kind, int submission_day, const TimeSeries& data,
                                   const DaylightCalendar& calendar, const BenchmarkRun& run,
                                   const WeatherForecastProvider& provider,
                                   int submission_tod_minutes = kDefaultSubmissionTod);
ForecastSeries benchmark_hour_ahead(BenchmarkKind kind, int k, const TimeSeries& data,
                                    const DaylightCalendar& calendar, const BenchmarkRun& run,
                                    const WeatherForecastProvider& provider);

}  // namespace pvcast
