#include "pvcast/solar_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pvcast/time_utils.hpp"

namespace pvcast {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;

}  // namespace

SolarPosition solar_position(const GeoLocation& loc, std::int64_t unix_time) {
  const CivilDateTime utc = to_civil(unix_time, 0);
  const int doy = day_of_year(unix_time, 0);
  const double hour_utc = utc.hour + utc.minute / 60.0 + utc.second / 3600.0;

  // Spencer's Fourier fits for declination and the equation of time.
  const double g = 2.0 * kPi / 365.0 * (doy - 1 + (hour_utc - 12.0) / 24.0);
  const double decl = 0.006918 - 0.399912 * std::cos(g) + 0.070257 * std::sin(g) -
                      0.006758 * std::cos(2 * g) + 0.000907 * std::sin(2 * g) -
                      0.002697 * std::cos(3 * g) + 0.00148 * std::sin(3 * g);
  const double eot_min = 229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) -
                                   0.014615 * std::cos(2 * g) - 0.040849 * std::sin(2 * g));

  // True solar time in minutes; 4 minutes per degree of longitude.
  const double tst = hour_utc * 60.0 + eot_min + 4.0 * loc.longitude_deg;
  const double hour_angle = (tst / 4.0 - 180.0) * kDegToRad;

  const double lat = loc.latitude_deg * kDegToRad;
  const double sin_alt =
      std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(hour_angle);

  SolarPosition pos;
  pos.altitude_rad = std::asin(std::clamp(sin_alt, -1.0, 1.0));
  // Azimuth from south, west positive: atan2(west component, south component).
  const double west = std::cos(decl) * std::sin(hour_angle);
  const double south = std::sin(lat) * std::cos(decl) * std::cos(hour_angle) -
                       std::cos(lat) * std::sin(decl);
  pos.azimuth_rad = std::atan2(west, south);
  return pos;
}

double clear_sky_normal(double altitude_rad) {
  if (altitude_rad <= 0.0) return 0.0;
  const double sin_h = std::sin(altitude_rad);
  if (sin_h <= 0.0) return 0.0;
  return kExtraterrestrialIrradiance * std::pow(0.7, std::pow(1.0 / sin_h, 0.678));
}

double clear_sky_inclined(const SolarPosition& pos, const SurfaceOrientation& orient,
                          double normal_irradiance) {
  const double tilt = orient.tilt_deg * kDegToRad;
  const double az = orient.azimuth_deg * kDegToRad;
  const double factor = std::sin(tilt) * std::cos(pos.altitude_rad) *
                            std::cos(az - pos.azimuth_rad) +
                        std::cos(tilt) * std::sin(pos.altitude_rad);
  return std::max(0.0, factor * normal_irradiance);
}

double reference_clear_sky(const GeoLocation& loc, const SurfaceOrientation& orient,
                           std::int64_t unix_time) {
  const SolarPosition pos = solar_position(loc, unix_time);
  return clear_sky_inclined(pos, orient, clear_sky_normal(pos.altitude_rad));
}

SurfaceOrientation guideline_orientation(const GeoLocation& loc) {
  SurfaceOrientation o;
  o.azimuth_deg = 0.0;
  o.tilt_deg = std::clamp(std::abs(loc.latitude_deg) - 12.0, 10.0, 40.0);
  return o;
}

DaylightCalendar build_daylight_calendar(const TimeSeries& data, const GeoLocation& loc,
                                         const SurfaceOrientation& orient) {
  if (data.empty()) throw std::invalid_argument("daylight calendar over an empty series");
  DaylightCalendar cal;
  cal.utc_offset_minutes = data.utc_offset_minutes;

  const std::int64_t day0 = local_day_index(data.samples.front().unix_time, data.utc_offset_minutes);
  // interval-averaged samples get their geometry at the interval middle
  const std::int64_t shift =
      data.interval_averaged ? static_cast<std::int64_t>(data.step_minutes) * 30 : 0;
  int num_days = 0;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const Sample& s = data.samples[i];
    if (i > 0 && s.unix_time <= data.samples[i - 1].unix_time) {
      throw std::invalid_argument("series timestamps not strictly increasing");
    }
    const int day = static_cast<int>(local_day_index(s.unix_time, data.utc_offset_minutes) - day0) + 1;
    num_days = std::max(num_days, day);
    const double irr = reference_clear_sky(loc, orient, s.unix_time + shift);
    if (irr > 0.0) {
      DaylightCalendar::Entry e;
      e.sample_pos = i;
      e.day = day;
      e.tod_minutes = tod_minutes(s.unix_time, data.utc_offset_minutes);
      e.unix_time = s.unix_time;
      e.clear_sky = irr;
      cal.entries.push_back(e);
    }
  }

  cal.day_ranges.assign(static_cast<std::size_t>(num_days), {-1, -1});
  for (int k = 0; k < static_cast<int>(cal.entries.size()); ++k) {
    auto& range = cal.day_ranges[static_cast<std::size_t>(cal.entries[static_cast<std::size_t>(k)].day - 1)];
    if (range.first < 0) range.first = k;
    range.second = k;
  }
  return cal;
}

}  // namespace pvcast
