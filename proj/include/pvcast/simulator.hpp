#pragma once

#include <cstdint>
#include <string>

#include "pvcast/dataset.hpp"
#include "pvcast/model_core.hpp"
#include "pvcast/solar_geometry.hpp"

namespace pvcast {

// Physical constants of the simulated reference plant.
struct TruePlant {
  ParamsN5 params{0.92, -1.237e-4, -2.99e-3, -0.3, -0.25};
  SurfaceOrientation orientation{27.0, 0.0};
  double p_nom_kw = 920.0;
};

// Noise / data-processing setup selected by a setup id (SID):
//   0: raw 15-min data, no noise          1: hourly averaged, no noise
//   2-5: cloud cover noise + quantization + averaging (3*sigma_N = 0, .1, .5, 1)
//   6-8: power noise + quantization + averaging (3*sigma_P = 10, 50, 100 kW)
//   9-11: temperature noise + quantization + averaging (3*sigma_T = 1, 3, 5 C)
//   12: all three noises (0.3, 50 kW, 3 C) + quantization + averaging
struct ScenarioConfig {
  int sid = 0;
  double three_sigma_n = 0.0;
  double three_sigma_p_kw = 0.0;
  double three_sigma_t_c = 0.0;
  bool quantize_n = false;
  bool hourly_average = false;

  static ScenarioConfig for_sid(int sid);  // throws std::out_of_range

  // Nominal total cloud-cover disturbance: configured noise plus the
  // full-scale quantization figure 1/sqrt(12), combined in quadrature.
  double total_n_sigma() const;
};

struct SimulationInputs {
  GeoLocation location{44.0, 9.2};
  int utc_offset_minutes = 60;
  int start_year = 2015;
  int start_month = 1;
  int start_day = 1;
  int days = 365;
  int step_minutes = 15;
  std::uint64_t seed = 1;
};

// Seasonal cloud-cover and temperature series with multi-day cloudy/clear
// episodes: a daily cloudiness level drawn from a seasonally modulated Beta
// distribution, mean-reverting intra-day fluctuation around it, and a
// seasonal-plus-diurnal temperature profile. Deterministic per seed.
TimeSeries generate_weather(const SimulationInputs& in);

// Direct evaluation of the combined plant equations; written out in full here
// so it can serve as an independent check of the regression form.
double true_power(double clear_sky, double temp_c, double cloud_cover, const TruePlant& plant);

// Weather plus true-model power on the plant's nominal orientation.
TimeSeries generate_nominal_dataset(const SimulationInputs& in, const TruePlant& plant);

// Applies the scenario processing in order: add noise to the designated
// channels, clamp cloud cover to [0,1], quantize it to 0.1 steps, then
// average every channel over each hour.
TimeSeries apply_scenario(const TimeSeries& nominal, const ScenarioConfig& scenario,
                          std::uint64_t seed);

// Scenario manifest written next to the exported dataset.
void write_scenario_manifest(const ScenarioConfig& scenario, const SimulationInputs& in,
                             const std::string& path);

}  // namespace pvcast
