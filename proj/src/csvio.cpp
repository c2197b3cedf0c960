#include "rvol/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rvol/errors.hpp"

namespace rvol::csvio {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double parse_number(std::string_view field, const std::string& what,
                    std::size_t line_no) {
  const std::string text = trim(field);
  if (text.empty()) {
    throw DataError("line " + std::to_string(line_no) + ": empty " + what);
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw DataError("line " + std::to_string(line_no) + ": malformed " + what +
                    " '" + text + "'");
  }
  return v;
}

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace rvol::csvio
