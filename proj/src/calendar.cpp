#include "rvol/calendar.hpp"

#include <array>
#include <cstdio>

#include "rvol/errors.hpp"

namespace rvol {

namespace {

bool is_leap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) return 29;
  return kDays[static_cast<std::size_t>(month - 1)];
}

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

bool is_valid(const Date& d) {
  if (d.year < 1 || d.month < 1 || d.month > 12 || d.day < 1) return false;
  return d.day <= days_in_month(d.year, d.month);
}

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !all_digits(text.substr(0, 4)) || !all_digits(text.substr(5, 2)) ||
      !all_digits(text.substr(8, 2))) {
    throw DataError("malformed date '" + std::string(text) +
                    "' (expected YYYY-MM-DD)");
  }
  Date d{to_int(text.substr(0, 4)), to_int(text.substr(5, 2)),
         to_int(text.substr(8, 2))};
  if (!is_valid(d)) {
    throw DataError("impossible date '" + std::string(text) + "'");
  }
  return d;
}

DateTime parse_datetime(std::string_view text) {
  if (text.size() != 19 || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || !all_digits(text.substr(11, 2)) ||
      !all_digits(text.substr(14, 2)) || !all_digits(text.substr(17, 2))) {
    throw DataError("malformed timestamp '" + std::string(text) +
                    "' (expected YYYY-MM-DDTHH:MM:SS)");
  }
  DateTime t{parse_date(text.substr(0, 10)), to_int(text.substr(11, 2)),
             to_int(text.substr(14, 2)), to_int(text.substr(17, 2))};
  if (t.hour > 23 || t.minute > 59 || t.second > 59) {
    throw DataError("impossible time of day in '" + std::string(text) + "'");
  }
  return t;
}

std::string to_string(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::string to_string(const DateTime& t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", t.date.year,
                t.date.month, t.date.day, t.hour, t.minute, t.second);
  return buf;
}

Date next_day(const Date& d) {
  Date n = d;
  if (d.day < days_in_month(d.year, d.month)) {
    ++n.day;
  } else if (d.month < 12) {
    ++n.month;
    n.day = 1;
  } else {
    ++n.year;
    n.month = 1;
    n.day = 1;
  }
  return n;
}

}  // namespace rvol
