#include <doctest.h>

#include <random>

#include "pigou/core.hpp"
#include "pigou/schedule.hpp"
#include "support/generators.hpp"

using namespace pigou;

namespace {

Scenario quadratic_uniform(double cost, double mu, int n = 1001) {
  Scenario s;
  s.utility = UtilityModel::quadratic(1.0);
  s.types = TypeDistribution::uniform(0.0, 1.0, n);
  s.cost = cost;
  s.mu = mu;
  s.cap = 1.0;
  return s;
}

}  // namespace

TEST_CASE("demand closed forms") {
  const UtilityModel quad = UtilityModel::quadratic(1.0);
  CHECK(demand(quad, 0.18, 0.5, 1.0) == doctest::Approx(0.32).epsilon(1e-14));
  CHECK(demand(quad, 0.5, 0.3, 1.0) == 0.0);
  const UtilityModel unit = UtilityModel::unit_demand();
  CHECK(demand(unit, 0.5, 0.7, 1.0) == 1.0);
  CHECK(demand(unit, 0.5, 0.5, 1.0) == 0.0);  // ties resolve to zero
  CHECK(demand(quad, -0.5, 0.9, 1.0) == 1.0); // clamped at the cap
}

TEST_CASE("demand monotonicity in type and price") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const UtilityModel m =
        rep % 2 ? UtilityModel::quadratic(0.5 + u(rng)) : UtilityModel::unit_demand();
    const double p = u(rng), p2 = p + u(rng);
    const double th = u(rng), th2 = th + u(rng);
    CHECK(demand(m, p, th2, 1.0) >= demand(m, p, th, 1.0));
    CHECK(demand(m, p2, th, 1.0) <= demand(m, p, th, 1.0));
  }
}

TEST_CASE("laissez-faire matches closed-form demand at cost") {
  Scenario s = quadratic_uniform(0.5, 0.0, 101);
  const AllocationSchedule lf = laissez_faire(s);
  for (Eigen::Index i = 0; i < s.types.size(); ++i) {
    const double theta = s.types.grid()[i];
    CHECK(lf[i] == doctest::Approx(std::max(theta - 0.5, 0.0)).epsilon(1e-14));
    CHECK(lf[i] == demand(s.utility, s.cost, theta, s.cap));
  }

  SUBCASE("cost above the top type kills demand") {
    s.cost = 2.0;
    CHECK(laissez_faire(s).values().maxCoeff() == 0.0);
  }
  SUBCASE("unit demand gives the indicator step") {
    s.utility = UtilityModel::unit_demand();
    const AllocationSchedule step = laissez_faire(s);
    for (Eigen::Index i = 0; i < s.types.size(); ++i) {
      CHECK(step[i] == (s.types.grid()[i] > 0.5 ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("uniform discretization") {
  const TypeDistribution t = TypeDistribution::uniform(0.0, 1.0, 4);
  CHECK(t.grid()[0] == doctest::Approx(0.125));
  CHECK(t.grid()[3] == doctest::Approx(0.875));
  CHECK(t.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.cdf()[3] == 1.0);
  // Midpoint rule integrates linear functions exactly.
  CHECK(t.mean() == doctest::Approx(0.5).epsilon(1e-15));
  const TypeDistribution t2 = TypeDistribution::uniform(1.0, 2.0, 1001);
  CHECK(t2.mean() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("scenario validation") {
  Scenario s = quadratic_uniform(0.5, 0.32, 11);
  CHECK(validate(s).empty());

  SUBCASE("xi_bar below mu") {
    s.xi_bar = 0.1;
    s.mu = 0.3;
    const auto v = validate(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "xi_bar");
  }
  SUBCASE("weights not normalized") {
    Array grid = s.types.grid();
    Array w = Array::Constant(11, 0.9 / 11);
    s.types = TypeDistribution(grid, w);
    bool found = false;
    for (const auto& v : validate(s)) found = found || v.field == "types.weights";
    CHECK(found);
  }
  SUBCASE("non-increasing grid") {
    Array grid = s.types.grid();
    grid[5] = grid[4];
    s.types = TypeDistribution(grid, s.types.weights());
    bool found = false;
    for (const auto& v : validate(s)) found = found || v.field == "types.grid";
    CHECK(found);
  }
  SUBCASE("bad cost, mu, cap collected together") {
    s.cost = 0.0;
    s.mu = -1.0;
    s.cap = 0.0;
    CHECK(validate(s).size() == 3);
  }
}

TEST_CASE("single crossing on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    const UtilityModel m =
        rep % 2 ? UtilityModel::quadratic(0.5 + u(rng)) : UtilityModel::unit_demand();
    const double ti = u(rng), tj = ti + u(rng) + 1e-6;
    const double q = u(rng), dq = u(rng) + 1e-6;
    const double gain_hi = m.value(q + dq, tj) - m.value(q, tj);
    const double gain_lo = m.value(q + dq, ti) - m.value(q, ti);
    CHECK(gain_hi >= gain_lo);
    if (m.family == UtilityFamily::Quadratic) {
      CHECK(gain_hi - gain_lo == doctest::Approx((tj - ti) * dq).epsilon(1e-9));
    }
  }
}
