#include "pvcast/time_utils.hpp"

#include <cstdio>
#include <stdexcept>

namespace pvcast {

std::int64_t days_from_civil(int y, int m, int d) {
  // Howard Hinnant's algorithm, valid for the proleptic Gregorian calendar.
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  year = static_cast<int>(y + (month <= 2));
}

std::int64_t to_unix(const CivilDateTime& c, int utc_offset_minutes) {
  const std::int64_t days = days_from_civil(c.year, c.month, c.day);
  const std::int64_t local = days * 86400 + c.hour * 3600 + c.minute * 60 + c.second;
  return local - static_cast<std::int64_t>(utc_offset_minutes) * 60;
}

CivilDateTime to_civil(std::int64_t unix_time, int utc_offset_minutes) {
  const std::int64_t local = unix_time + static_cast<std::int64_t>(utc_offset_minutes) * 60;
  std::int64_t days = local / 86400;
  std::int64_t rem = local % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  CivilDateTime c;
  civil_from_days(days, c.year, c.month, c.day);
  c.hour = static_cast<int>(rem / 3600);
  c.minute = static_cast<int>((rem % 3600) / 60);
  c.second = static_cast<int>(rem % 60);
  return c;
}

std::int64_t parse_iso8601(const std::string& text, int* offset_minutes) {
  CivilDateTime c;
  int n = 0;
  if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d%n", &c.year, &c.month, &c.day, &c.hour,
                  &c.minute, &c.second, &n) != 6) {
    throw std::invalid_argument("malformed timestamp: " + text);
  }
  const std::string tail = text.substr(static_cast<std::size_t>(n));
  int offset = 0;
  if (tail == "Z" || tail == "z") {
    offset = 0;
  } else if (!tail.empty() && (tail[0] == '+' || tail[0] == '-')) {
    int oh = 0, om = 0;
    if (std::sscanf(tail.c_str() + 1, "%d:%d", &oh, &om) != 2) {
      throw std::invalid_argument("malformed timestamp offset: " + text);
    }
    offset = oh * 60 + om;
    if (tail[0] == '-') offset = -offset;
  } else {
    throw std::invalid_argument("timestamp missing UTC offset: " + text);
  }
  if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour > 23 || c.minute > 59 ||
      c.second > 60) {
    throw std::invalid_argument("timestamp fields out of range: " + text);
  }
  if (offset_minutes != nullptr) *offset_minutes = offset;
  return to_unix(c, offset);
}

std::string format_iso8601(std::int64_t unix_time, int utc_offset_minutes) {
  const CivilDateTime c = to_civil(unix_time, utc_offset_minutes);
  char buf[40];
  const char sign = utc_offset_minutes < 0 ? '-' : '+';
  const int abs_off = utc_offset_minutes < 0 ? -utc_offset_minutes : utc_offset_minutes;
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d%c%02d:%02d", c.year, c.month,
                c.day, c.hour, c.minute, c.second, sign, abs_off / 60, abs_off % 60);
  return buf;
}

int tod_minutes(std::int64_t unix_time, int utc_offset_minutes) {
  const std::int64_t local = unix_time + static_cast<std::int64_t>(utc_offset_minutes) * 60;
  std::int64_t rem = local % 86400;
  if (rem < 0) rem += 86400;
  return static_cast<int>(rem / 60);
}

std::int64_t local_day_index(std::int64_t unix_time, int utc_offset_minutes) {
  const std::int64_t local = unix_time + static_cast<std::int64_t>(utc_offset_minutes) * 60;
  std::int64_t days = local / 86400;
  if (local % 86400 < 0) days -= 1;
  return days;
}

int day_of_year(std::int64_t unix_time, int utc_offset_minutes) {
  const CivilDateTime c = to_civil(unix_time, utc_offset_minutes);
  return static_cast<int>(days_from_civil(c.year, c.month, c.day) -
                          days_from_civil(c.year, 1, 1)) +
         1;
}

}  // namespace pvcast
