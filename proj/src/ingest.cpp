#include "rvol/ingest.hpp"

#include <cmath>
#include <istream>
#include <utility>

#include "rvol/csvio.hpp"
#include "rvol/errors.hpp"

namespace rvol::ingest {

namespace {

std::string read_header(std::istream& in, std::size_t& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = csvio::trim(line);
    if (t.empty() || t[0] == '#') continue;
    return t;
  }
  throw DataError("empty input: no header line found");
}

}  // namespace

std::vector<PriceTick> parse_ticks(std::istream& in) {
  std::size_t line_no = 0;
  const std::string header = read_header(in, line_no);
  if (header != "timestamp,price") {
    throw DataError("line " + std::to_string(line_no) +
                    ": expected header 'timestamp,price', got '" + header + "'");
  }

  std::vector<PriceTick> ticks;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = csvio::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = csvio::split(t);
    if (fields.size() != 2) {
      throw DataError("line " + std::to_string(line_no) +
                      ": expected 'timestamp,price', got " +
                      std::to_string(fields.size()) + " fields");
    }
    PriceTick tick;
    try {
      tick.timestamp = parse_datetime(csvio::trim(fields[0]));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    tick.price = csvio::parse_number(fields[1], "price", line_no);
    if (tick.price <= 0.0) {
      throw DataError("line " + std::to_string(line_no) +
                      ": non-positive price " + csvio::format_full(tick.price));
    }
    if (!ticks.empty()) {
      if (tick.timestamp < ticks.back().timestamp) {
        throw DataError("line " + std::to_string(line_no) +
                        ": timestamp " + to_string(tick.timestamp) +
                        " is earlier than the previous tick");
      }
      if (tick.timestamp == ticks.back().timestamp) {
        // last-quote convention for duplicate timestamps
        ticks.back() = tick;
        continue;
      }
    }
    ticks.push_back(tick);
  }
  return ticks;
}

SessionBuild sessions_from_ticks(std::span<const PriceTick> ticks, int min_obs,
                                 std::string market) {
  // 3 ticks = 2 returns, the minimum for bipower variation downstream
  if (min_obs < 3) min_obs = 3;
  SessionBuild build;
  build.dataset.market = std::move(market);

  std::size_t i = 0;
  while (i < ticks.size()) {
    const Date day = ticks[i].timestamp.date;
    std::size_t end = i;
    while (end < ticks.size() && ticks[end].timestamp.date == day) ++end;
    const std::size_t count = end - i;
    if (count < static_cast<std::size_t>(min_obs)) {
      build.dropped.push_back(day);
    } else {
      IntradaySession session;
      session.date = day;
      session.returns.reserve(count - 1);
      for (std::size_t j = i + 1; j < end; ++j) {
        session.returns.push_back(std::log(ticks[j].price) -
                                  std::log(ticks[j - 1].price));
      }
      build.dataset.sessions.push_back(std::move(session));
    }
    i = end;
  }
  return build;
}

std::vector<DailyMeasures> load_measures(std::istream& in) {
  std::size_t line_no = 0;
  const std::string header = read_header(in, line_no);

  const auto columns = csvio::split(header);
  int idx_date = -1, idx_rv = -1, idx_rsvp = -1, idx_rsvm = -1, idx_bv = -1,
      idx_ret = -1;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const std::string name = csvio::trim(columns[c]);
    const int ci = static_cast<int>(c);
    if (name == "date") {
      idx_date = ci;
    } else if (name == "rv") {
      idx_rv = ci;
    } else if (name == "rsv_plus") {
      idx_rsvp = ci;
    } else if (name == "rsv_minus") {
      idx_rsvm = ci;
    } else if (name == "bv") {
      idx_bv = ci;
    } else if (name == "ret") {
      idx_ret = ci;
    } else {
      throw DataError("line " + std::to_string(line_no) +
                      ": unknown measures column '" + name + "'");
    }
  }
  if (idx_date < 0 || idx_rv < 0) {
    throw DataError("measures header must contain 'date' and 'rv'");
  }

  std::vector<DailyMeasures> out;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = csvio::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = csvio::split(t);
    if (fields.size() != columns.size()) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(columns.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    auto optional_field = [&](int idx, const char* what) -> std::optional<double> {
      if (idx < 0) return std::nullopt;
      if (csvio::trim(fields[static_cast<std::size_t>(idx)]).empty()) return std::nullopt;
      return csvio::parse_number(fields[static_cast<std::size_t>(idx)], what, line_no);
    };

    DailyMeasures m;
    try {
      m.date = parse_date(csvio::trim(fields[static_cast<std::size_t>(idx_date)]));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    m.rv = csvio::parse_number(fields[static_cast<std::size_t>(idx_rv)], "rv", line_no);
    if (m.rv < 0.0) {
      throw DataError("line " + std::to_string(line_no) + ": negative rv");
    }
    m.rsv_plus = optional_field(idx_rsvp, "rsv_plus");
    m.rsv_minus = optional_field(idx_rsvm, "rsv_minus");
    m.bv = optional_field(idx_bv, "bv");
    m.ret = optional_field(idx_ret, "ret");

    const std::pair<std::optional<double>, const char*> nonneg_checks[] = {
        {m.rsv_plus, "rsv_plus"}, {m.rsv_minus, "rsv_minus"}, {m.bv, "bv"}};
    for (const auto& [value, what] : nonneg_checks) {
      if (value && *value < 0.0) {
        throw DataError("line " + std::to_string(line_no) + ": negative " +
                        std::string(what));
      }
    }
    if (m.rsv_plus && m.rsv_minus) {
      const double total = *m.rsv_plus + *m.rsv_minus;
      const double scale = std::max(std::abs(m.rv), 1e-300);
      if (std::abs(total - m.rv) / scale > 1e-6) {
        throw DataError("line " + std::to_string(line_no) +
                        ": rsv_plus + rsv_minus deviates from rv by more than "
                        "relative 1e-6");
      }
    }
    if (!out.empty() && !(out.back().date < m.date)) {
      throw DataError("line " + std::to_string(line_no) +
                      ": dates must be strictly increasing (" +
                      to_string(m.date) + " after " + to_string(out.back().date) + ")");
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace rvol::ingest
