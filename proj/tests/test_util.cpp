#include "doctest.h"

#include <stdexcept>

#include "pvcast/csv.hpp"
#include "pvcast/dataset.hpp"
#include "pvcast/time_utils.hpp"

using namespace pvcast;

TEST_SUITE("util") {

TEST_CASE("civil round trip") {
  const CivilDateTime c{2015, 6, 21, 12, 34, 56};
  const std::int64_t t = to_unix(c, 60);
  const CivilDateTime back = to_civil(t, 60);
  CHECK(back.year == 2015);
  CHECK(back.month == 6);
  CHECK(back.day == 21);
  CHECK(back.hour == 12);
  CHECK(back.minute == 34);
  CHECK(back.second == 56);
  // one hour earlier in UTC
  CHECK(to_civil(t, 0).hour == 11);
}

TEST_CASE("known epoch values") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(2000, 1, 1) == 10957);
  CHECK(to_unix({2015, 1, 1, 0, 0, 0}, 0) == 1420070400);
}

TEST_CASE("iso8601 parse and format") {
  int off = 0;
  const std::int64_t t = parse_iso8601("2015-06-21T12:00:00+01:00", &off);
  CHECK(off == 60);
  CHECK(t == to_unix({2015, 6, 21, 12, 0, 0}, 60));
  CHECK(parse_iso8601("2015-06-21T11:00:00Z") == t);
  CHECK(format_iso8601(t, 60) == "2015-06-21T12:00:00+01:00");
  CHECK(format_iso8601(t, -330) == "2015-06-21T05:30:00-05:30");

  CHECK_THROWS_AS(parse_iso8601("yesterday"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("2015-06-21T12:00:00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("2015-13-21T12:00:00Z"), std::invalid_argument);
}

TEST_CASE("time of day and day counters") {
  const std::int64_t t = to_unix({2015, 3, 1, 6, 30, 0}, 60);
  CHECK(tod_minutes(t, 60) == 6 * 60 + 30);
  CHECK(tod_minutes(t, 0) == 5 * 60 + 30);
  CHECK(day_of_year(t, 60) == 60);  // 2015 is not a leap year
  CHECK(local_day_index(t, 60) - local_day_index(to_unix({2015, 2, 28, 23, 0, 0}, 60), 60) == 1);
}

TEST_CASE("csv splitting and tables") {
  const auto fields = split_csv_line("a,b,,d\r");
  REQUIRE(fields.size() == 4);
  CHECK(fields[2].empty());
  CHECK(fields[3] == "d");
}

TEST_CASE("time grid construction") {
  const TimeSeries grid = make_time_grid(2015, 1, 1, 2, 15, 60);
  CHECK(grid.samples.size() == 2 * 96);
  CHECK(grid.samples[1].unix_time - grid.samples[0].unix_time == 15 * 60);
  CHECK(tod_minutes(grid.samples.front().unix_time, 60) == 0);
  CHECK_THROWS_AS(make_time_grid(2015, 1, 1, 1, 7, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_time_grid(2015, 1, 1, 0, 60, 0), std::invalid_argument);
}

TEST_CASE("dataset csv round trip") {
  TimeSeries data = make_time_grid(2015, 1, 1, 1, 60, 60);
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    data.samples[i].power_kw = 10.0 * static_cast<double>(i);
    data.samples[i].temp_c = 5.0 + 0.1 * static_cast<double>(i);
    data.samples[i].cloud_cover = (static_cast<double>(i % 10)) / 10.0;
  }
  const std::string path = "test_dataset_roundtrip.csv";
  write_dataset_csv(data, path);
  const TimeSeries back = read_dataset_csv(path);
  REQUIRE(back.samples.size() == data.samples.size());
  CHECK(back.utc_offset_minutes == 60);
  CHECK(back.step_minutes == 60);
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    CHECK(back.samples[i].unix_time == data.samples[i].unix_time);
    CHECK(back.samples[i].power_kw == doctest::Approx(data.samples[i].power_kw).epsilon(1e-9));
    CHECK(back.samples[i].cloud_cover ==
          doctest::Approx(data.samples[i].cloud_cover).epsilon(1e-9));
  }
  std::remove(path.c_str());
}

}  // TEST_SUITE
