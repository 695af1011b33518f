#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pvcast/dataset.hpp"

namespace pvcast {

struct GeoLocation {
  double latitude_deg = 0.0;   // [-90, 90], north positive
  double longitude_deg = 0.0;  // [-180, 180], east positive
};

// Panel orientation. Azimuth is measured from due south, west positive;
// tilt 0 is a horizontal surface.
struct SurfaceOrientation {
  double tilt_deg = 0.0;     // [0, 90]
  double azimuth_deg = 0.0;  // [-180, 180]
};

// Sun position in the same azimuth convention as SurfaceOrientation.
struct SolarPosition {
  double altitude_rad = 0.0;  // angle over the horizon, [-pi/2, pi/2]
  double azimuth_rad = 0.0;   // from south, west positive
};

inline constexpr double kExtraterrestrialIrradiance = 1353.0;  // W/m^2

// Mid-accuracy astronomical position (declination + equation of time + hour
// angle); better than 0.5 degrees, which is all the irradiance model needs.
SolarPosition solar_position(const GeoLocation& loc, std::int64_t unix_time);

// Theoretical clear-sky irradiance on a sun-facing (normal) surface.
double clear_sky_normal(double altitude_rad);

// Projection of the normal irradiance onto a tilted surface, floored at zero
// (the geometric factor goes negative when the sun is behind the panel).
double clear_sky_inclined(const SolarPosition& pos, const SurfaceOrientation& orient,
                          double normal_irradiance);

// Reference clear-sky irradiance at the plant: position -> normal -> inclined.
double reference_clear_sky(const GeoLocation& loc, const SurfaceOrientation& orient,
                           std::int64_t unix_time);

// Efficient-orientation guideline when the true panel layout is unknown:
// south facing, tilt = latitude - 12 deg clamped to [10, 40].
SurfaceOrientation guideline_orientation(const GeoLocation& loc);

// Daylight index bookkeeping. Samples with positive reference clear-sky
// irradiance get consecutive indices k = 0, 1, ...; indices are therefore
// contiguous across day boundaries and night samples carry no index at all.
struct DaylightCalendar {
  struct Entry {
    std::size_t sample_pos;  // position in TimeSeries::samples
    int day;                 // 1-based day number within the series
    int tod_minutes;         // local time of day
    std::int64_t unix_time;
    double clear_sky;        // reference irradiance, > 0
  };

  std::vector<Entry> entries;
  // day (1-based) -> [first k, last k]; {-1, -1} marks a day without light.
  std::vector<std::pair<int, int>> day_ranges;
  int utc_offset_minutes = 0;

  int num_days() const { return static_cast<int>(day_ranges.size()); }
  bool day_empty(int day) const { return day_ranges.at(static_cast<std::size_t>(day - 1)).first < 0; }
  int first_k(int day) const { return day_ranges.at(static_cast<std::size_t>(day - 1)).first; }
  int last_k(int day) const { return day_ranges.at(static_cast<std::size_t>(day - 1)).second; }
  int num_indices() const { return static_cast<int>(entries.size()); }
};

DaylightCalendar build_daylight_calendar(const TimeSeries& data, const GeoLocation& loc,
                                         const SurfaceOrientation& orient);

}  // namespace pvcast
