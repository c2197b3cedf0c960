#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "rvol/errors.hpp"
#include "rvol/ingest.hpp"
#include "rvol/measures.hpp"
#include "rvol/simulator.hpp"

using namespace rvol;

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("degenerate process produces a constant price and zero measures") {
  sim::SimConfig cfg;
  cfg.days = 5;
  cfg.n_per_day = 12;
  cfg.sigma = 0.0;
  cfg.drift = 0.0;
  cfg.jump_intensity = 0.0;
  const auto result = sim::simulate(cfg);
  REQUIRE(result.dataset.sessions.size() == 5);
  for (const auto& s : result.dataset.sessions) {
    for (double r : s.returns) CHECK(r == 0.0);
    const auto m = measures::compute_daily(s);
    CHECK(m.rv == 0.0);
    CHECK(*m.bv == 0.0);
  }
  for (const auto& t : result.truth) {
    CHECK(t.iv == 0.0);
    CHECK(t.jump2_plus == 0.0);
    CHECK(t.jump2_minus == 0.0);
  }
}

TEST_CASE("same seed gives bit-identical output, different seed differs") {
  sim::SimConfig cfg;
  cfg.days = 30;
  cfg.n_per_day = 60;
  cfg.jump_intensity = 0.5;
  cfg.seed = 99;
  const auto a = sim::simulate(cfg);
  const auto b = sim::simulate(cfg);
  REQUIRE(a.dataset.sessions.size() == b.dataset.sessions.size());
  for (std::size_t d = 0; d < a.dataset.sessions.size(); ++d) {
    CHECK(a.dataset.sessions[d].returns == b.dataset.sessions[d].returns);
    CHECK(a.truth[d].iv == b.truth[d].iv);
    CHECK(a.truth[d].jump2_plus == b.truth[d].jump2_plus);
  }
  cfg.seed = 100;
  const auto c = sim::simulate(cfg);
  CHECK(a.dataset.sessions[0].returns != c.dataset.sessions[0].returns);
}

TEST_CASE("negative-only jumps leave the positive truth at zero") {
  sim::SimConfig cfg;
  cfg.days = 200;
  cfg.n_per_day = 48;
  cfg.jump_intensity = 1.0;
  cfg.jump_mean = -0.01;
  cfg.jump_sd = 0.005;
  cfg.jump_sign = sim::JumpSign::negative_only;
  cfg.seed = 3;
  const auto result = sim::simulate(cfg);
  bool any_jump = false;
  for (const auto& t : result.truth) {
    CHECK(t.jump2_plus == 0.0);
    if (t.jump2_minus > 0.0) any_jump = true;
  }
  CHECK(any_jump);
}

TEST_CASE("rv and bv are consistent for the integrated variance") {
  sim::SimConfig cfg;
  cfg.days = 10000;
  cfg.n_per_day = 288;
  cfg.sigma = 0.01;
  cfg.jump_intensity = 0.0;
  cfg.seed = 12345;
  const auto result = sim::simulate(cfg);

  std::vector<double> rv, bv, rsvp, rsvm, iv;
  for (std::size_t d = 0; d < result.dataset.sessions.size(); ++d) {
    const auto m = measures::compute_daily(result.dataset.sessions[d]);
    rv.push_back(m.rv);
    bv.push_back(*m.bv);
    rsvp.push_back(*m.rsv_plus);
    rsvm.push_back(*m.rsv_minus);
    iv.push_back(result.truth[d].iv);
  }
  const double mean_iv = mean_of(iv);
  CHECK(mean_of(rv) / mean_iv == doctest::Approx(1.0).epsilon(0.02));
  CHECK(mean_of(bv) / mean_iv == doctest::Approx(1.0).epsilon(0.02));
  // semivariance limits: each converges to one half of IV
  CHECK(mean_of(rsvp) / (0.5 * mean_iv) == doctest::Approx(1.0).epsilon(0.03));
  CHECK(mean_of(rsvm) / (0.5 * mean_iv) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("doubling sigma quadruples the integrated variance") {
  sim::SimConfig cfg;
  cfg.days = 500;
  cfg.n_per_day = 96;
  cfg.sigma = 0.01;
  cfg.seed = 8;
  const auto base = sim::simulate(cfg);
  cfg.sigma = 0.02;
  const auto big = sim::simulate(cfg);
  double iv1 = 0.0, iv2 = 0.0;
  for (const auto& t : base.truth) iv1 += t.iv;
  for (const auto& t : big.truth) iv2 += t.iv;
  CHECK(iv2 / iv1 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("jumps raise rv by their squared sum while bv stays put") {
  sim::SimConfig cfg;
  cfg.days = 10000;
  cfg.n_per_day = 288;
  cfg.sigma = 0.01;
  cfg.seed = 77;
  const auto calm = sim::simulate(cfg);

  // moderate jumps: at n = 288 the spillover of a jump into the two
  // adjacent bipower products grows with |kappa| sqrt(dt) sigma
  cfg.jump_intensity = 1.0;
  cfg.jump_mean = 0.0;
  cfg.jump_sd = 0.003;
  const auto jumpy = sim::simulate(cfg);

  double rv_calm = 0.0, rv_jumpy = 0.0, bv_calm = 0.0, bv_jumpy = 0.0, k2 = 0.0;
  for (std::size_t d = 0; d < calm.dataset.sessions.size(); ++d) {
    rv_calm += measures::realized_volatility(calm.dataset.sessions[d].returns);
    bv_calm += measures::bipower_variation(calm.dataset.sessions[d].returns);
  }
  for (std::size_t d = 0; d < jumpy.dataset.sessions.size(); ++d) {
    rv_jumpy += measures::realized_volatility(jumpy.dataset.sessions[d].returns);
    bv_jumpy += measures::bipower_variation(jumpy.dataset.sessions[d].returns);
    k2 += jumpy.truth[d].jump2_plus + jumpy.truth[d].jump2_minus;
  }
  const double days = static_cast<double>(cfg.days);
  // mean RV rises by ~E[sum kappa^2]
  CHECK((rv_jumpy - rv_calm) / days == doctest::Approx(k2 / days).epsilon(0.10));
  // mean BV moves by less than 5%
  CHECK(std::fabs(bv_jumpy - bv_calm) / bv_calm < 0.05);
}

TEST_CASE("tick csv round trips through ingest with identical measures") {
  sim::SimConfig cfg;
  cfg.days = 12;
  cfg.n_per_day = 30;
  cfg.jump_intensity = 0.3;
  cfg.seed = 21;
  const auto result = sim::simulate(cfg);

  std::ostringstream out;
  sim::write_ticks_csv(out, result);
  std::istringstream in(out.str());
  const auto ticks = ingest::parse_ticks(in);
  const auto build = ingest::sessions_from_ticks(ticks, 2, cfg.market);
  REQUIRE(build.dataset.sessions.size() == result.dataset.sessions.size());
  for (std::size_t d = 0; d < build.dataset.sessions.size(); ++d) {
    const auto a = measures::compute_daily(build.dataset.sessions[d]);
    const auto b = measures::compute_daily(result.dataset.sessions[d]);
    CHECK(a.rv == doctest::Approx(b.rv).epsilon(1e-9));
    CHECK(*a.bv == doctest::Approx(*b.bv).epsilon(1e-9));
  }
}

TEST_CASE("log-ou volatility with leverage correlation runs and varies") {
  sim::SimConfig cfg;
  cfg.days = 300;
  cfg.n_per_day = 48;
  cfg.log_ou = sim::LogOuVol{0.01, 4.0, 0.4, -0.6};
  cfg.seed = 5;
  const auto result = sim::simulate(cfg);
  double lo = 1e300, hi = 0.0;
  for (const auto& t : result.truth) {
    lo = std::min(lo, t.iv);
    hi = std::max(hi, t.iv);
  }
  CHECK(hi > 1.5 * lo);  // vol actually moves
}

TEST_CASE("har dgp: all-zero slopes give ln rv = c + noise") {
  sim::HarDgpConfig cfg;
  cfg.spec = features::model_by_id("HAR-J");
  cfg.coefficients = {-9.0, 0, 0, 0, 0, 0, 0};
  cfg.days = 2000;
  cfg.noise_sd = 0.3;
  cfg.seed = 4;
  const auto m = sim::simulate_har_dgp(cfg);
  REQUIRE(m.size() == 2000);
  std::vector<double> lnrv;
  for (const auto& d : m) lnrv.push_back(std::log(d.rv));
  const double mean = mean_of(lnrv);
  CHECK(mean == doctest::Approx(-9.0).epsilon(0.01));
  double var = 0.0;
  for (double v : lnrv) var += (v - mean) * (v - mean);
  var /= static_cast<double>(lnrv.size());
  CHECK(std::sqrt(var) == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("har dgp is seed-deterministic and rejects explosive coefficients") {
  sim::HarDgpConfig cfg;
  cfg.spec = features::model_by_id("HAR-J");
  cfg.coefficients = {-0.9, 0.35, 0.3, 0.2, -20.0, 10.0, 0.0};
  cfg.days = 100;
  cfg.seed = 10;
  const auto a = sim::simulate_har_dgp(cfg);
  const auto b = sim::simulate_har_dgp(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].rv == b[i].rv);
    CHECK(*a[i].ret == *b[i].ret);
  }

  cfg.coefficients = {-0.9, 0.5, 0.4, 0.2, 0.0, 0.0, 0.0};  // sums to 1.1
  CHECK_THROWS_AS(sim::simulate_har_dgp(cfg), NumericError);
}

TEST_CASE("har dgp measures satisfy the daily invariants") {
  sim::HarDgpConfig cfg;
  cfg.spec = features::model_by_id("RSV-AJ-LE");
  cfg.coefficients = std::vector<double>(19, 0.0);
  cfg.coefficients[0] = -3.0;
  cfg.coefficients[1] = 0.2;
  cfg.coefficients[4] = 0.3;
  cfg.days = 500;
  cfg.seed = 6;
  const auto m = sim::simulate_har_dgp(cfg);
  for (const auto& d : m) {
    CHECK(*d.rsv_plus + *d.rsv_minus == doctest::Approx(d.rv).epsilon(1e-12));
    CHECK(*d.bv >= 0.0);
    CHECK(*d.jump() >= 0.0);
  }
}
