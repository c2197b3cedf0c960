#include <doctest.h>

#include "rvol/calendar.hpp"
#include "rvol/errors.hpp"

using rvol::Date;

TEST_CASE("date parse and format round trip") {
  const Date d = rvol::parse_date("2019-09-20");
  CHECK(d == Date{2019, 9, 20});
  CHECK(rvol::to_string(d) == "2019-09-20");
  CHECK(rvol::parse_date("2020-02-29") == Date{2020, 2, 29});  // leap day
}

TEST_CASE("invalid dates rejected") {
  CHECK_THROWS_AS(rvol::parse_date("2019-13-01"), rvol::DataError);
  CHECK_THROWS_AS(rvol::parse_date("2019-02-29"), rvol::DataError);
  CHECK_THROWS_AS(rvol::parse_date("2019/02/01"), rvol::DataError);
  CHECK_THROWS_AS(rvol::parse_date("19-02-01"), rvol::DataError);
}

TEST_CASE("datetime parse and ordering") {
  const auto a = rvol::parse_datetime("2001-01-04T09:00:00");
  const auto b = rvol::parse_datetime("2001-01-04T09:05:00");
  CHECK(a < b);
  CHECK(rvol::to_string(b) == "2001-01-04T09:05:00");
  CHECK_THROWS_AS(rvol::parse_datetime("2001-01-04 09:00:00"), rvol::DataError);
  CHECK_THROWS_AS(rvol::parse_datetime("2001-01-04T24:00:00"), rvol::DataError);
}

TEST_CASE("next_day handles month and year ends") {
  CHECK(rvol::next_day(Date{2001, 1, 31}) == Date{2001, 2, 1});
  CHECK(rvol::next_day(Date{2001, 12, 31}) == Date{2002, 1, 1});
  CHECK(rvol::next_day(Date{2000, 2, 28}) == Date{2000, 2, 29});
}
