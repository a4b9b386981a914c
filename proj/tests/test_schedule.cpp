#include <doctest.h>

#include <random>
#include <sstream>

#include "pigou/schedule.hpp"
#include "support/generators.hpp"

using namespace pigou;

namespace {

Scenario unit_scenario(int n) {
  Scenario s;
  s.utility = UtilityModel::unit_demand();
  s.types = TypeDistribution::uniform(0.0, 1.0, n);
  s.cost = 0.5;
  s.mu = 0.2;
  s.cap = 1.0;
  return s;
}

}  // namespace

TEST_CASE("make_schedule accepts and rejects") {
  Scenario s = unit_scenario(4);
  Array good(4);
  good << 0.1, 0.3, 0.3, 0.9;
  CHECK_NOTHROW(make_schedule(good, s));

  Scenario s2 = unit_scenario(2);
  Array decreasing(2);
  decreasing << 0.5, 0.4;
  try {
    make_schedule(decreasing, s2);
    FAIL("expected NonMonotone");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonMonotone);
    CHECK(e.index() == 1);
  }

  Array outside(2);
  outside << 0.2, 1.2;
  try {
    make_schedule(outside, s2);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfRange);
    CHECK(e.index() == 1);
  }

  Array wrong_len(3);
  wrong_len << 0.1, 0.2, 0.3;
  CHECK_THROWS_AS(make_schedule(wrong_len, s2), Error);
}

TEST_CASE("envelope transfers: constant schedule") {
  Scenario s = unit_scenario(5);
  const double k = 0.4;
  const Mechanism mech =
      transfers_from_allocation(AllocationSchedule(Array::Constant(5, k)), s, 0.0);
  for (Eigen::Index i = 0; i < 5; ++i) {
    CHECK(mech.utilities[i] ==
          doctest::Approx(k * (s.types.grid()[i] - s.types.grid()[0])).epsilon(1e-12));
    CHECK(mech.transfers[i] == doctest::Approx(k * s.types.grid()[0]).epsilon(1e-12));
  }

  SUBCASE("u0 = k * theta_1 zeroes the transfers (free lottery)") {
    const Mechanism free = transfers_from_allocation(AllocationSchedule(Array::Constant(5, k)),
                                                     s, k * s.types.grid()[0]);
    for (Eigen::Index i = 0; i < 5; ++i) {
      CHECK(free.transfers[i] == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(free.utilities[i] == doctest::Approx(k * s.types.grid()[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("envelope transfers: all-zero schedule") {
  Scenario s = unit_scenario(5);
  const Mechanism mech = transfers_from_allocation(AllocationSchedule(Array::Zero(5)), s, 0.0);
  CHECK(mech.transfers.abs().maxCoeff() == 0.0);
  CHECK(mech.utilities.abs().maxCoeff() == 0.0);
}

TEST_CASE("verify_ic: envelope output is incentive compatible") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 0.6);
  for (int rep = 0; rep < 100; ++rep) {
    Scenario s = rep % 2 ? unit_scenario(9) : testing::random_quadratic_scenario(
                                                  rng, 9, ExternalitySign::Positive,
                                                  Benchmark::Unknown);
    const Array q = testing::random_monotone(rng, 9, 0.0, rep % 2 ? 1.0 : s.cap);
    const Mechanism mech = transfers_from_allocation(AllocationSchedule(q), s, u(rng));
    CHECK(verify_ic(mech, s).empty());
  }
}

TEST_CASE("verify_ic: zero transfers with increasing allocation invite imitation") {
  Scenario s = unit_scenario(5);
  Array q(5);
  q << 0.0, 0.2, 0.5, 0.7, 1.0;
  Mechanism mech;
  mech.schedule = AllocationSchedule(q);
  mech.transfers = Array::Zero(5);
  mech.utilities = Array::Zero(5);
  for (Eigen::Index i = 0; i < 5; ++i) {
    mech.utilities[i] = s.utility.value(q[i], s.types.grid()[i]);
  }
  CHECK(!verify_ic(mech, s).empty());
}

TEST_CASE("verify_ic: single-point grid is trivially clean") {
  Scenario s = unit_scenario(1);
  const Mechanism mech = transfers_from_allocation(AllocationSchedule(Array::Constant(1, 0.7)), s, 0.3);
  CHECK(verify_ic(mech, s).empty());
}

TEST_CASE("transfers shift with u0, IC unaffected") {
  std::mt19937_64 rng(29);
  Scenario s = unit_scenario(7);
  const Array q = testing::random_monotone(rng, 7, 0.0, 1.0);
  const double k = 0.37;
  const Mechanism base = transfers_from_allocation(AllocationSchedule(q), s, 0.1);
  const Mechanism moved = transfers_from_allocation(AllocationSchedule(q), s, 0.1 + k);
  for (Eigen::Index i = 0; i < 7; ++i) {
    CHECK(moved.transfers[i] == doctest::Approx(base.transfers[i] - k).epsilon(1e-12));
  }
  CHECK(verify_ic(moved, s).empty());
}

TEST_CASE("schedule stats") {
  Scenario s;
  s.utility = UtilityModel::unit_demand();
  Array grid(2), w(2);
  grid << 0.2, 0.8;
  w << 0.5, 0.5;
  s.types = TypeDistribution(grid, w);
  s.cost = 0.5;
  s.mu = 0.0;
  s.cap = 1.0;
  Array q(2);
  q << 0.1, 0.3;
  const ScheduleStats st = schedule_stats(AllocationSchedule(q), s);
  CHECK(st.min == 0.1);
  CHECK(st.max == 0.3);
  CHECK(st.mean == doctest::Approx(0.2));

  Scenario s3;
  s3.utility = UtilityModel::unit_demand();
  Array g3(3), w3(3);
  g3 << 0.1, 0.5, 0.9;
  w3 << 0.25, 0.25, 0.5;
  s3.types = TypeDistribution(g3, w3);
  s3.cost = 0.5;
  s3.cap = 1.0;
  Array q3(3);
  q3 << 0.0, 0.0, 1.0;
  const ScheduleStats st3 = schedule_stats(AllocationSchedule(q3), s3);
  CHECK(st3.min == 0.0);
  CHECK(st3.max == 1.0);
  CHECK(st3.mean == doctest::Approx(0.5));
}

TEST_CASE("stats ordering with equality only for constants") {
  std::mt19937_64 rng(31);
  Scenario s = unit_scenario(6);
  for (int rep = 0; rep < 200; ++rep) {
    const Array q = testing::random_monotone(rng, 6, 0.0, 1.0);
    const ScheduleStats st = schedule_stats(AllocationSchedule(q), s);
    CHECK(st.min <= st.mean + 1e-12);
    CHECK(st.mean <= st.max + 1e-12);
    if (st.max - st.min > 1e-9) {
      CHECK(st.mean > st.min);
      CHECK(st.mean < st.max);
    }
  }
  const ScheduleStats flat = schedule_stats(AllocationSchedule(Array::Constant(6, 0.4)), s);
  CHECK(flat.min == flat.mean);
  CHECK(flat.mean == flat.max);
}

TEST_CASE("mechanism CSV round trip") {
  std::mt19937_64 rng(37);
  Scenario s = unit_scenario(50);
  const Array q = testing::random_monotone(rng, 50, 0.0, 1.0);
  const Mechanism mech = transfers_from_allocation(AllocationSchedule(q), s, 0.0);
  std::stringstream ss;
  write_mechanism_csv(ss, mech, s);
  const Array back = read_schedule_csv(ss);
  REQUIRE(back.size() == q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    CHECK(back[i] == doctest::Approx(q[i]).epsilon(1e-11));
  }
  // Re-ingested values still form a valid schedule despite 12-digit rounding.
  CHECK_NOTHROW(make_schedule(back, s));
}
