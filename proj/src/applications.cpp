#include "pigou/applications.hpp"

#include <algorithm>
#include <cmath>

namespace pigou {

std::vector<Violation> validate(const ScreeningMechanism& mech, const TypeDistribution& types) {
  std::vector<Violation> out;
  const Eigen::Index n = types.size();
  if (mech.q.size() != n || mech.t.size() != n) {
    out.push_back({"mech", "q/t length does not match the type grid"});
    return out;
  }
  if (!(mech.capacity > 0.0 && mech.capacity < 1.0)) {
    out.push_back({"mech.capacity", "capacity must lie in (0, 1)"});
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(mech.q[i] >= -1e-12 && mech.q[i] <= 1.0 + 1e-12)) {
      out.push_back({"mech.q", "allocation probabilities must lie in [0, 1]"});
      break;
    }
  }
  if ((mech.t < -1e-12).any()) {
    out.push_back({"mech.t", "waiting costs must be nonnegative"});
  }
  if ((mech.q * types.weights()).sum() > mech.capacity + 1e-9) {
    out.push_back({"mech.q", "expected allocation exceeds capacity"});
  }
  // Envelope-consistency: U_i = theta_i q_i - t_i must climb by exactly the
  // left rectangle q_i * (theta_{i+1} - theta_i), which also forces U
  // nondecreasing when q >= 0.
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double step = (types.grid()[i + 1] - types.grid()[i]) * mech.q[i];
    const double u_here = types.grid()[i] * mech.q[i] - mech.t[i];
    const double u_next = types.grid()[i + 1] * mech.q[i + 1] - mech.t[i + 1];
    if (std::abs(u_next - u_here - step) > 1e-9) {
      out.push_back({"mech.t", "transfers break the envelope identity"});
      break;
    }
  }
  return out;
}

double mandate_threshold(double cost, const TypeDistribution& types) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < types.size(); ++i) {
    acc += types.weights()[i] * std::max(cost - types.grid()[i], 0.0);
  }
  return acc;
}

Policy robust_vaccine_policy(const Scenario& s) {
  if (s.utility.family != UtilityFamily::LinearUnitDemand) {
    throw Error(Errc::WrongUtility, "vaccine policy is a unit-demand problem");
  }
  if (s.sign != ExternalitySign::Positive) {
    throw Error(Errc::WrongRegime, "vaccine policy assumes a beneficial externality");
  }
  const Eigen::Index n = s.types.size();
  Policy p;

  if (s.benchmark == Benchmark::PositiveCorr) {
    // Subsidy of mu: takeup by everyone with theta above cost - mu.
    p.kind = PolicyKind::UniformSubsidy;
    p.parameter = s.mu;
    Array q(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      q[i] = demand(s.utility, s.cost - s.mu, s.types.grid()[i], s.cap);
    }
    p.schedule = AllocationSchedule(std::move(q));
    p.guarantee = worst_case_welfare(p.schedule, s);
    return p;
  }

  const double threshold = mandate_threshold(s.cost, s.types);
  if (s.mu >= threshold) {
    p.kind = PolicyKind::Mandate;
    p.parameter = 1.0;
    p.schedule = AllocationSchedule(Array::Constant(n, std::min(1.0, s.cap)));
    if (std::abs(s.mu - threshold) <= 1e-12) {
      p.note = "indifferent: mu equals the mandate threshold, continuum of optima";
    }
  } else {
    p.kind = PolicyKind::LaissezFaire;
    p.parameter = 0.0;
    p.schedule = laissez_faire(s);
    p.note = "mandate threshold not met";
  }
  p.guarantee = worst_case_welfare(p.schedule, s);
  return p;
}

bool bayesian_mandate_condition(const Scenario& s, const ConditionalMean& m) {
  double prefix = 0.0;
  for (Eigen::Index i = 0; i < s.types.size(); ++i) {
    prefix += s.types.weights()[i] * (s.types.grid()[i] - s.cost + m.values[i]);
    if (prefix < -1e-9) return false;
  }
  return true;
}

Policy solve_abatement_floor(const CostModel& cost, const TypeDistribution& types, double mu) {
  auto marginal = [&](double qf) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < types.size(); ++i) {
      acc += types.weights()[i] * cost.marginal(qf, types.grid()[i]);
    }
    return acc;
  };

  Policy p;
  if (mu <= marginal(0.0)) {
    p.kind = PolicyKind::LaissezFaire;
    p.parameter = 0.0;
    p.schedule = AllocationSchedule(Array::Zero(types.size()));
    p.note = "no intervention: expected marginal abatement cost already at mu";
    return p;
  }

  // Bracket upward; marginal cost is increasing and, for the quadratic
  // family on a nondegenerate grid, unbounded, so this terminates.
  double hi = 1.0;
  int doublings = 0;
  while (marginal(hi) < mu && doublings < 200) {
    hi *= 2.0;
    ++doublings;
  }
  p.kind = PolicyKind::Floor;
  if (marginal(hi) < mu) {
    p.parameter = hi;
    p.note = "marginal abatement cost never reaches mu over the search range";
  } else {
    double a = 0.0, b = hi;
    while (b - a > kBisectTol * std::max(1.0, hi)) {
      const double mid = 0.5 * (a + b);
      (marginal(mid) < mu ? a : b) = mid;
      ++p.iterations;
    }
    p.parameter = 0.5 * (a + b);
    p.foc_residual = marginal(p.parameter) - mu;
  }
  p.schedule = AllocationSchedule(Array::Constant(types.size(), p.parameter));
  // Worst case over harm distributions with mean mu: everyone abates the
  // floor amount, so the avoided harm is at least mu * floor.
  double expected_cost = 0.0;
  for (Eigen::Index i = 0; i < types.size(); ++i) {
    expected_cost += types.weights()[i] * cost.cost(p.parameter, types.grid()[i]);
  }
  p.guarantee = mu * p.parameter - expected_cost;
  return p;
}

double industry_response(const PaymentSchedule& schedule, double theta, const CostModel& cost) {
  if (schedule.floor <= 0.0) return 0.0;
  // Abatement costs money, so the only candidates are exact compliance and
  // (when a finite penalty exists) paying it to abate nothing.
  if (!schedule.penalty) return schedule.floor;
  return cost.cost(schedule.floor, theta) <= *schedule.penalty ? schedule.floor : 0.0;
}

ScreeningMechanism lottery(double capacity, const TypeDistribution& types) {
  ScreeningMechanism mech;
  mech.q = Array::Constant(types.size(), capacity);
  mech.t = Array::Zero(types.size());
  mech.capacity = capacity;
  return mech;
}

double screening_worst_case(const ScreeningMechanism& mech, double mu,
                            const TypeDistribution& types) {
  return mu * (types.grid()[0] * mech.q[0] - mech.t[0]);
}

}  // namespace pigou
