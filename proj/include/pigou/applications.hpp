#pragma once

#include <optional>

#include "pigou/solvers.hpp"

namespace pigou {

/// Abatement technology: C(q, theta) = gamma * theta * q^2 / 2, the cost for
/// a firm of cost type theta > 0 to abate q units. Increasing and strictly
/// convex in q, with marginal cost increasing in theta on the interior.
struct CostModel {
  double gamma = 1.0;

  double cost(double q, double theta) const { return 0.5 * gamma * theta * q * q; }
  double marginal(double q, double theta) const { return gamma * theta * q; }
};

/// Regulatory payment rule implementing an abatement floor: pay nothing at or
/// above the floor, `penalty` below it. An absent penalty means undercutting
/// the floor is infeasible outright; it is never approximated by a large
/// finite number.
struct PaymentSchedule {
  double floor = 0.0;
  std::optional<double> penalty;  // nullopt: infeasible below the floor
};

/// Direct mechanism for rationing capacity: allocation probability q_i in
/// [0, 1] and nonnegative waiting cost t_i per type, sum f_i q_i <= capacity.
struct ScreeningMechanism {
  Array q;
  Array t;
  double capacity = 0.0;
};

std::vector<Violation> validate(const ScreeningMechanism& mech, const TypeDistribution& types);

/// Mean benefit level at which a universal mandate starts beating
/// laissez-faire under unit demand: sum_i f_i * max(c - theta_i, 0), the
/// allocative-efficiency loss a mandate inflicts on types below cost.
double mandate_threshold(double cost, const TypeDistribution& types);

/// Robust policy for unit-demand takeup of an activity with beneficial
/// spillovers. Under Unknown or NegativeCorr the choice is all-or-nothing:
/// Mandate when mu >= mandate_threshold (equality is a flagged indifference),
/// LaissezFaire otherwise. Under PositiveCorr a subsidy of mu is optimal and
/// takeup becomes 1{theta > c - mu}.
Policy robust_vaccine_policy(const Scenario& s);

/// Whether a planner who trusts the conditional mean m would mandate: every
/// grid prefix must satisfy sum_{i<=k} f_i * (theta_i - c + m_i) >= -1e-9.
/// Strictly stronger than the robust criterion mu >= mandate_threshold.
bool bayesian_mandate_condition(const Scenario& s, const ConditionalMean& m);

/// Uniform abatement floor equating expected marginal abatement cost to the
/// mean harm avoided: sum_i f_i * C_q(qf, theta_i) = mu. Worst-case benefit
/// of a common floor is mu * qf, so the guarantee is mu*qf - E[C(qf, theta)].
Policy solve_abatement_floor(const CostModel& cost, const TypeDistribution& types, double mu);

/// Firm's cost-minimizing abatement facing the payment rule: argmin over q of
/// C(q, theta) + T(q). Equals the floor whenever the penalty (or its absence)
/// dominates the compliance cost, and 0 when undercutting is cheaper.
double industry_response(const PaymentSchedule& schedule, double theta, const CostModel& cost);

/// Everyone gets the same allocation `capacity` for free; capacity binds in
/// expectation with equality.
ScreeningMechanism lottery(double capacity, const TypeDistribution& types);

/// Worst case of a screening mechanism when Nature concentrates the external
/// benefit on the least-served type: mu * U(theta_1) = mu * (theta_1 q_1 - t_1).
/// For valid mechanisms U is nondecreasing, making the bottom rent the minimum.
double screening_worst_case(const ScreeningMechanism& mech, double mu,
                            const TypeDistribution& types);

}  // namespace pigou
