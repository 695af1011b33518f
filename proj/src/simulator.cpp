#include "pvcast/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "pvcast/time_utils.hpp"

namespace pvcast {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Weather generator calibration (sunny continental-Italian year).
constexpr double kCloudSeasonalMean = 0.20;
constexpr double kCloudSeasonalAmplitude = 0.21;
constexpr double kCloudBetaConcentration = 0.68;
constexpr double kCloudCorrelationHours = 0.88;
constexpr double kCloudStationarySigma = 0.27;
constexpr double kFrontIntervalHours = 2.9;
constexpr double kClearDayLevel = 0.17;
constexpr double kTempSeasonalMeanC = 16.5;
constexpr double kTempSeasonalAmplitudeC = 8.5;
constexpr double kTempDiurnalAmplitudeC = 8.6;
constexpr double kTempSpellStepSigmaC = 2.3;

double quantize_cloud_cover(double n) {
  return std::round(std::clamp(n, 0.0, 1.0) * 10.0) / 10.0;
}

}  // namespace

ScenarioConfig ScenarioConfig::for_sid(int sid) {
  ScenarioConfig c;
  c.sid = sid;
  switch (sid) {
    case 0: break;
    case 1: c.hourly_average = true; break;
    case 2: c.three_sigma_n = 0.0; c.quantize_n = true; c.hourly_average = true; break;
    case 3: c.three_sigma_n = 0.1; c.quantize_n = true; c.hourly_average = true; break;
    case 4: c.three_sigma_n = 0.5; c.quantize_n = true; c.hourly_average = true; break;
    case 5: c.three_sigma_n = 1.0; c.quantize_n = true; c.hourly_average = true; break;
    case 6: c.three_sigma_p_kw = 10.0; c.quantize_n = true; c.hourly_average = true; break;
    case 7: c.three_sigma_p_kw = 50.0; c.quantize_n = true; c.hourly_average = true; break;
    case 8: c.three_sigma_p_kw = 100.0; c.quantize_n = true; c.hourly_average = true; break;
    case 9: c.three_sigma_t_c = 1.0; c.quantize_n = true; c.hourly_average = true; break;
    case 10: c.three_sigma_t_c = 3.0; c.quantize_n = true; c.hourly_average = true; break;
    case 11: c.three_sigma_t_c = 5.0; c.quantize_n = true; c.hourly_average = true; break;
    case 12:
      c.three_sigma_n = 0.3;
      c.three_sigma_p_kw = 50.0;
      c.three_sigma_t_c = 3.0;
      c.quantize_n = true;
      c.hourly_average = true;
      break;
    default: throw std::out_of_range("SID must be in 0..12");
  }
  return c;
}

double ScenarioConfig::total_n_sigma() const {
  const double sigma_n = three_sigma_n / 3.0;
  const double sigma_q = quantize_n ? 1.0 / std::sqrt(12.0) : 0.0;
  return std::sqrt(sigma_n * sigma_n + sigma_q * sigma_q);
}

TimeSeries generate_weather(const SimulationInputs& in) {
  TimeSeries grid = make_time_grid(in.start_year, in.start_month, in.start_day, in.days,
                                   in.step_minutes, in.utc_offset_minutes);
  std::mt19937_64 rng(in.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const int per_day = 24 * 60 / in.step_minutes;
  const double dt_h = in.step_minutes / 60.0;

  // Episode-based daily cloudiness: a level shared by a run of days, drawn
  // from a Beta whose mean follows the season (cloudier in winter).
  auto draw_beta = [&](double mean, double concentration) {
    const double a = std::max(0.05, mean * concentration);
    const double b = std::max(0.05, (1.0 - mean) * concentration);
    std::gamma_distribution<double> ga(a, 1.0);
    std::gamma_distribution<double> gb(b, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
  };

  std::vector<double> day_level(static_cast<std::size_t>(in.days));
  {
    int remaining = 0;
    double level = 0.0;
    for (int d = 0; d < in.days; ++d) {
      if (remaining == 0) {
        const int doy =
            day_of_year(grid.samples[static_cast<std::size_t>(d) * per_day].unix_time,
                        in.utc_offset_minutes);
        const double seasonal_mean = std::clamp(
            kCloudSeasonalMean +
                kCloudSeasonalAmplitude * std::cos(kTwoPi * (doy - 15) / 365.25),
            0.02, 0.98);
        level = draw_beta(seasonal_mean, kCloudBetaConcentration);
        remaining = 1 + static_cast<int>(std::floor(-2.5 * std::log(1.0 - uniform(rng))));
      }
      day_level[static_cast<std::size_t>(d)] = std::clamp(level + 0.05 * gauss(rng), 0.0, 1.0);
      --remaining;
    }
  }

  // Intra-day cloud cover: mean reversion toward the day level, correlation
  // time under an hour (broken-cloud regime), with front passages that
  // replace the target level mid-day and fully clear anticyclone days.
  const double revert = dt_h / kCloudCorrelationHours;
  const double n_step_sigma = kCloudStationarySigma * std::sqrt(2.0 * revert);
  const double front_prob = dt_h / kFrontIntervalHours;

  double n = day_level[0];
  double t_noise = 0.0;
  double spell = 0.0;  // multi-day warm/cool anomaly
  for (int d = 0; d < in.days; ++d) {
    double level = day_level[static_cast<std::size_t>(d)];
    spell = 0.8 * spell + kTempSpellStepSigmaC * gauss(rng);
    for (int i = 0; i < per_day; ++i) {
      Sample& s = grid.samples[static_cast<std::size_t>(d) * per_day + i];
      if (uniform(rng) < front_prob) {
        const int doy = day_of_year(s.unix_time, in.utc_offset_minutes);
        const double seasonal_mean = std::clamp(
            kCloudSeasonalMean +
                kCloudSeasonalAmplitude * std::cos(kTwoPi * (doy - 15) / 365.25),
            0.02, 0.98);
        level = draw_beta(seasonal_mean, kCloudBetaConcentration);
      }
      n += revert * (level - n) + n_step_sigma * gauss(rng);
      n = std::clamp(n, 0.0, 1.0);
      s.cloud_cover = level < kClearDayLevel ? 0.0 : n;

      const int doy = day_of_year(s.unix_time, in.utc_offset_minutes);
      const int tod = tod_minutes(s.unix_time, in.utc_offset_minutes);
      const double seasonal =
          kTempSeasonalMeanC -
          kTempSeasonalAmplitudeC * std::cos(kTwoPi * (doy - 15) / 365.25);
      // Diurnal swing peaking mid-afternoon, damped on overcast days.
      const double amplitude = kTempDiurnalAmplitudeC * (1.0 - 0.45 * level);
      const double diurnal = amplitude * std::cos(kTwoPi * (tod - 14.0 * 60.0) / (24.0 * 60.0));
      t_noise = 0.9 * t_noise + 0.5 * gauss(rng);
      s.temp_c = std::clamp(seasonal + spell + diurnal + t_noise, -10.0, 40.0);
      s.power_kw = 0.0;
    }
  }
  return grid;
}

double true_power(double clear_sky, double temp_c, double cloud_cover, const TruePlant& plant) {
  // Direct evaluation, kept independent of the regression-form code path.
  const ParamsN5& m = plant.params;
  const double irr = (1.0 + m.mu4 * cloud_cover + m.mu5 * cloud_cover * cloud_cover) * clear_sky;
  return m.mu1 * irr + m.mu2 * irr * irr + m.mu3 * irr * temp_c;
}

TimeSeries generate_nominal_dataset(const SimulationInputs& in, const TruePlant& plant) {
  TimeSeries data = generate_weather(in);
  for (Sample& s : data.samples) {
    const double i0 = reference_clear_sky(in.location, plant.orientation, s.unix_time);
    s.power_kw = i0 > 0.0 ? true_power(i0, s.temp_c, s.cloud_cover, plant) : 0.0;
  }
  return data;
}

TimeSeries apply_scenario(const TimeSeries& nominal, const ScenarioConfig& scenario,
                          std::uint64_t seed) {
  TimeSeries out = nominal;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double sigma_n = scenario.three_sigma_n / 3.0;
  const double sigma_p = scenario.three_sigma_p_kw / 3.0;
  const double sigma_t = scenario.three_sigma_t_c / 3.0;

  for (Sample& s : out.samples) {
    if (sigma_n > 0.0) s.cloud_cover += sigma_n * gauss(rng);
    if (sigma_p > 0.0) s.power_kw += sigma_p * gauss(rng);
    if (sigma_t > 0.0) s.temp_c += sigma_t * gauss(rng);
    s.cloud_cover = std::clamp(s.cloud_cover, 0.0, 1.0);
    if (scenario.quantize_n) s.cloud_cover = quantize_cloud_cover(s.cloud_cover);
  }

  if (!scenario.hourly_average) return out;

  TimeSeries hourly;
  hourly.step_minutes = 60;
  hourly.utc_offset_minutes = out.utc_offset_minutes;
  hourly.interval_averaged = true;
  const std::int64_t offset_s = static_cast<std::int64_t>(out.utc_offset_minutes) * 60;
  std::int64_t hour = 0;  // local-hour bucket
  int count = 0;
  Sample acc{};
  auto flush = [&]() {
    if (count == 0) return;
    Sample s;
    s.unix_time = hour * 3600 - offset_s;  // stamped at the start of the local hour
    s.power_kw = acc.power_kw / count;
    s.temp_c = acc.temp_c / count;
    s.cloud_cover = acc.cloud_cover / count;
    hourly.samples.push_back(s);
    count = 0;
    acc = Sample{};
  };
  for (const Sample& s : out.samples) {
    const std::int64_t local = s.unix_time + offset_s;
    const std::int64_t h = local >= 0 ? local / 3600 : (local - 3599) / 3600;
    if (count > 0 && h != hour) flush();
    hour = h;
    acc.power_kw += s.power_kw;
    acc.temp_c += s.temp_c;
    acc.cloud_cover += s.cloud_cover;
    ++count;
  }
  flush();
  return hourly;
}

void write_scenario_manifest(const ScenarioConfig& scenario, const SimulationInputs& in,
                             const std::string& path) {
  nlohmann::json j;
  j["sid"] = scenario.sid;
  j["three_sigma_n"] = scenario.three_sigma_n;
  j["three_sigma_p_kw"] = scenario.three_sigma_p_kw;
  j["three_sigma_t_c"] = scenario.three_sigma_t_c;
  j["quantize_n"] = scenario.quantize_n;
  j["hourly_average"] = scenario.hourly_average;
  j["total_n_sigma"] = scenario.total_n_sigma();
  j["seed"] = in.seed;
  j["latitude"] = in.location.latitude_deg;
  j["longitude"] = in.location.longitude_deg;
  j["utc_offset_minutes"] = in.utc_offset_minutes;
  j["start"] = {{"year", in.start_year}, {"month", in.start_month}, {"day", in.start_day}};
  j["days"] = in.days;
  j["step_minutes"] = in.step_minutes;
  j["generator"] = {{"cloud_seasonal_mean", kCloudSeasonalMean},
                    {"cloud_seasonal_amplitude", kCloudSeasonalAmplitude},
                    {"cloud_beta_concentration", kCloudBetaConcentration},
                    {"cloud_correlation_hours", kCloudCorrelationHours},
                    {"cloud_stationary_sigma", kCloudStationarySigma},
                    {"front_interval_hours", kFrontIntervalHours},
                    {"clear_day_level", kClearDayLevel},
                    {"temp_seasonal_mean_c", kTempSeasonalMeanC},
                    {"temp_seasonal_amplitude_c", kTempSeasonalAmplitudeC},
                    {"temp_diurnal_amplitude_c", kTempDiurnalAmplitudeC},
                    {"temp_spell_step_sigma_c", kTempSpellStepSigmaC}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace pvcast
