#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rvol/errors.hpp"
#include "rvol/measures.hpp"

using namespace rvol;

namespace {

// brute-force oracle: naive loops, no kernel code
struct NaiveDaily {
  double rv = 0.0, bv = 0.0, rsv_plus = 0.0, rsv_minus = 0.0, ret = 0.0;
};

NaiveDaily naive_daily(const std::vector<double>& r) {
  NaiveDaily d;
  for (double x : r) {
    d.rv += x * x;
    if (x >= 0.0) {
      d.rsv_plus += x * x;
    } else {
      d.rsv_minus += x * x;
    }
    d.ret += x;
  }
  for (std::size_t j = 1; j < r.size(); ++j) {
    d.bv += std::fabs(r[j]) * std::fabs(r[j - 1]);
  }
  d.bv *= std::numbers::pi / 2.0;
  return d;
}

}  // namespace

TEST_CASE("realized volatility is the sum of squares") {
  CHECK(measures::realized_volatility(std::vector<double>{0.01, -0.02, 0.01}) ==
        doctest::Approx(6e-4).epsilon(1e-14));
  CHECK(measures::realized_volatility(std::vector<double>{0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(measures::realized_volatility(std::vector<double>{}), DataError);
}

TEST_CASE("realized volatility matches a compensated oracle on normal draws") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> r(78);
  for (auto& x : r) x = 0.001 * normal(rng);

  double s = 0.0, c = 0.0;
  for (double x : r) {
    const double v = x * x;
    const double t = s + v;
    c += (std::fabs(s) >= std::fabs(v)) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  const double oracle = s + c;
  CHECK(std::fabs(measures::realized_volatility(r) - oracle) <=
        1e-15 * std::fabs(oracle));
}

TEST_CASE("bipower variation definition") {
  // scale pi/2 = (E|Z|)^{-2}; the estimator is consistent for the
  // integrated variance (checked against simulation in the simulator tests)
  CHECK(measures::bipower_variation(std::vector<double>{0.01, 0.01, 0.01}) ==
        doctest::Approx((std::numbers::pi / 2.0) * 2e-4).epsilon(1e-14));
  CHECK(measures::bipower_variation(std::vector<double>{0.01, 0.0}) == 0.0);
  CHECK_THROWS_AS(measures::bipower_variation(std::vector<double>{0.01}), DataError);
}

TEST_CASE("jump component truncates at zero") {
  CHECK(measures::jump_component(6e-4, 8e-4) == 0.0);
  CHECK(measures::jump_component(6e-4, 4e-4) == doctest::Approx(2e-4).epsilon(1e-14));
  CHECK_THROWS_AS(measures::jump_component(-1e-4, 1e-4), DataError);
}

TEST_CASE("semivariances split by sign, zero on the plus side") {
  auto split = measures::semivariances(std::vector<double>{0.01, -0.02, 0.01});
  CHECK(split.plus == doctest::Approx(2e-4).epsilon(1e-14));
  CHECK(split.minus == doctest::Approx(4e-4).epsilon(1e-14));

  split = measures::semivariances(std::vector<double>{0.01, 0.02});
  CHECK(split.minus == 0.0);

  split = measures::semivariances(std::vector<double>{0.0});
  CHECK(split.plus == 0.0);
  CHECK(split.minus == 0.0);
}

TEST_CASE("signed jumps truncate at zero") {
  CHECK(measures::signed_jumps(2e-4, 0.0, 6e-4).first == 0.0);
  CHECK(measures::signed_jumps(0.0, 5e-4, 6e-4).second ==
        doctest::Approx(2e-4).epsilon(1e-12));
  CHECK_THROWS_AS(measures::signed_jumps(-1.0, 0.0, 0.0), DataError);
}

TEST_CASE("compute_daily composes the measures") {
  IntradaySession session{Date{2019, 9, 20}, {0.01, -0.02, 0.01}};
  const auto m = measures::compute_daily(session);
  CHECK(m.rv == doctest::Approx(6e-4).epsilon(1e-14));
  CHECK(*m.rsv_plus == doctest::Approx(2e-4).epsilon(1e-14));
  CHECK(*m.rsv_minus == doctest::Approx(4e-4).epsilon(1e-14));
  CHECK(*m.bv == doctest::Approx((std::numbers::pi / 2.0) * 4e-4).epsilon(1e-14));
  // bv exceeds rv here, so the truncated jump is zero
  CHECK(*m.jump() == 0.0);
  CHECK(*m.ret == doctest::Approx(0.0).scale(1.0).epsilon(1e-18));
  CHECK(m.n == 3);

  IntradaySession zeros{Date{2019, 9, 21}, {0.0, 0.0, 0.0}};
  const auto z = measures::compute_daily(zeros);
  CHECK(z.rv == 0.0);
  CHECK(*z.bv == 0.0);
  CHECK(*z.jump() == 0.0);

  IntradaySession tiny{Date{2019, 9, 22}, {0.01}};
  CHECK_THROWS_AS(measures::compute_daily(tiny), DataError);
}

TEST_CASE("compute_daily equals the brute-force oracle on random sessions") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    IntradaySession session;
    session.date = Date{2019, 1, 1 + rep};
    const int n = 2 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) session.returns.push_back(0.002 * normal(rng));

    const auto m = measures::compute_daily(session);
    const auto o = naive_daily(session.returns);
    CHECK(m.rv == doctest::Approx(o.rv).epsilon(1e-12));
    CHECK(*m.bv == doctest::Approx(o.bv).epsilon(1e-12));
    CHECK(*m.rsv_plus == doctest::Approx(o.rsv_plus).epsilon(1e-12));
    CHECK(*m.rsv_minus == doctest::Approx(o.rsv_minus).epsilon(1e-12));
    CHECK(*m.ret == doctest::Approx(o.ret).epsilon(1e-10));

    // decomposition and truncation invariants
    CHECK(std::fabs((*m.rsv_plus + *m.rsv_minus) - m.rv) <= 1e-12 * m.rv);
    CHECK(*m.jump() >= 0.0);
    CHECK(*m.jump_plus() >= 0.0);
    CHECK(*m.jump_minus() >= 0.0);
  }
}

TEST_CASE("scale equivariance: returns scaled by c scale variances by c^2") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  IntradaySession session;
  session.date = Date{2020, 1, 6};
  for (int i = 0; i < 100; ++i) session.returns.push_back(0.01 * normal(rng));

  const auto base = measures::compute_daily(session);
  const double c = 2.5;
  IntradaySession scaled = session;
  for (auto& r : scaled.returns) r *= c;
  const auto big = measures::compute_daily(scaled);

  CHECK(big.rv == doctest::Approx(c * c * base.rv).epsilon(1e-12));
  CHECK(*big.bv == doctest::Approx(c * c * *base.bv).epsilon(1e-12));
  CHECK(*big.rsv_plus == doctest::Approx(c * c * *base.rsv_plus).epsilon(1e-12));
  CHECK(*big.rsv_minus == doctest::Approx(c * c * *base.rsv_minus).epsilon(1e-12));
  CHECK(*big.jump() == doctest::Approx(c * c * *base.jump()).epsilon(1e-10));
}
