#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace rvol {

/// Calendar date. Field order gives chronological ordering via <=>.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;
};

/// Exchange-local timestamp with one-second resolution.
struct DateTime {
  Date date;
  int hour = 0;
  int minute = 0;
  int second = 0;

  auto operator<=>(const DateTime&) const = default;
};

bool is_valid(const Date& d);

/// Parses strict `YYYY-MM-DD`; throws DataError on malformed or impossible dates.
Date parse_date(std::string_view text);

/// Parses strict ISO-8601 `YYYY-MM-DDTHH:MM:SS`.
DateTime parse_datetime(std::string_view text);

std::string to_string(const Date& d);
std::string to_string(const DateTime& t);

Date next_day(const Date& d);

}  // namespace rvol
