#include "rvol/measures.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "rvol/csvio.hpp"
#include "rvol/errors.hpp"
#include "rvol/parallel.hpp"

namespace rvol::measures {

namespace {

// mu_1^{-2} with mu_1 = E|Z| = sqrt(2/pi), so the sum is scaled by pi/2;
// this is what makes BV converge to the integrated variance
constexpr double kBipowerScale = std::numbers::pi / 2.0;

void require_nonnegative(double v, const char* what) {
  if (v < 0.0 || !std::isfinite(v)) {
    throw DataError(std::string(what) + " must be finite and nonnegative");
  }
}

}  // namespace

double realized_volatility(std::span<const double> returns) {
  if (returns.empty()) throw DataError("realized volatility needs at least one return");
  return kernels::sum_sq(returns);
}

double bipower_variation(std::span<const double> returns) {
  if (returns.size() < 2) throw DataError("bipower variation needs at least two returns");
  return kBipowerScale * kernels::sum_abs_lag1(returns);
}

double jump_component(double rv, double bv) {
  require_nonnegative(rv, "rv");
  require_nonnegative(bv, "bv");
  return std::max(rv - bv, 0.0);
}

kernels::SignSplit semivariances(std::span<const double> returns) {
  if (returns.empty()) throw DataError("semivariances need at least one return");
  return kernels::sum_sq_signed(returns);
}

std::pair<double, double> signed_jumps(double rsv_plus, double rsv_minus, double bv) {
  require_nonnegative(rsv_plus, "rsv_plus");
  require_nonnegative(rsv_minus, "rsv_minus");
  require_nonnegative(bv, "bv");
  const double half_bv = 0.5 * bv;
  return {std::max(rsv_plus - half_bv, 0.0), std::max(rsv_minus - half_bv, 0.0)};
}

DailyMeasures compute_daily(const IntradaySession& session) {
  if (session.n() < 2) {
    throw DataError("session " + to_string(session.date) +
                    " has fewer than 2 returns; bipower variation is undefined");
  }
  DailyMeasures m;
  m.date = session.date;
  m.n = static_cast<int>(session.n());
  m.rv = realized_volatility(session.returns);
  m.bv = bipower_variation(session.returns);
  const auto split = semivariances(session.returns);
  m.rsv_plus = split.plus;
  m.rsv_minus = split.minus;
  m.ret = kernels::sum(session.returns);
  return m;
}

std::vector<DailyMeasures> compute_all(const Dataset& dataset, unsigned threads) {
  std::vector<DailyMeasures> out(dataset.sessions.size());
  parallel_for(dataset.sessions.size(), threads,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t i = begin; i < end; ++i) {
                   out[i] = compute_daily(dataset.sessions[i]);
                 }
               });
  return out;
}

void write_csv(std::ostream& out, std::span<const DailyMeasures> measures) {
  out << "# units: variances in squared daily log returns (raw, not x1000); ret in log returns\n";
  out << "date,rv,rsv_plus,rsv_minus,bv,ret\n";
  for (const auto& m : measures) {
    out << to_string(m.date) << ',' << csvio::format_full(m.rv);
    out << ',' << (m.rsv_plus ? csvio::format_full(*m.rsv_plus) : "");
    out << ',' << (m.rsv_minus ? csvio::format_full(*m.rsv_minus) : "");
    out << ',' << (m.bv ? csvio::format_full(*m.bv) : "");
    out << ',' << (m.ret ? csvio::format_full(*m.ret) : "");
    out << '\n';
  }
}

}  // namespace rvol::measures
