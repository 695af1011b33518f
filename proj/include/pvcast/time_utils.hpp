#pragma once

#include <cstdint>
#include <string>

namespace pvcast {

// Broken-down civil date-time. All series in this project carry a fixed UTC
// offset; timestamps are stored as Unix seconds and converted on demand, so
// DST never enters the picture.
struct CivilDateTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
};

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int year, int month, int day);
void civil_from_days(std::int64_t days, int& year, int& month, int& day);

std::int64_t to_unix(const CivilDateTime& c, int utc_offset_minutes);
CivilDateTime to_civil(std::int64_t unix_time, int utc_offset_minutes);

// ISO-8601 with explicit offset: "2015-06-21T12:00:00+01:00" or trailing "Z".
// Throws std::invalid_argument on malformed input.
std::int64_t parse_iso8601(const std::string& text, int* offset_minutes = nullptr);
std::string format_iso8601(std::int64_t unix_time, int utc_offset_minutes);

// Minutes elapsed since local midnight.
int tod_minutes(std::int64_t unix_time, int utc_offset_minutes);

// Local day counter (days since epoch in local time); consecutive civil days
// map to consecutive values.
std::int64_t local_day_index(std::int64_t unix_time, int utc_offset_minutes);

int day_of_year(std::int64_t unix_time, int utc_offset_minutes);

}  // namespace pvcast
