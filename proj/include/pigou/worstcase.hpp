#pragma once

#include <iosfwd>
#include <vector>

#include "pigou/schedule.hpp"

namespace pigou {

/// Shape restriction on the conditional mean of the external effect as a
/// function of type, corresponding to the benchmark the regulator trusts.
enum class MeanClass { Any, Nondecreasing, Nonincreasing };

/// Benchmark -> shape of the conditional means Nature may play.
MeanClass class_for(Benchmark benchmark);

/// Nature's strategy: m[i] = E[effect | theta_i] on the scenario grid. Every
/// feasible strategy is nonnegative, lies in its declared class, and has
/// weighted mean equal to the scenario's mu.
struct ConditionalMean {
  Array values;
  MeanClass monotone_class = MeanClass::Any;
};

std::vector<Violation> validate(const ConditionalMean& m, const Scenario& s);

/// Value of the external term at Nature's best response to schedule q:
///   Positive sign: +mu * min(q) under Unknown or NegativeCorr,
///                  +mu * mean(q) under PositiveCorr;
///   Negative sign: -mu * max(q) under Unknown or PositiveCorr,
///                  -mu * mean(q) under NegativeCorr.
/// Requires a valid (monotone) schedule; mu = 0 gives 0 in every regime.
double worst_case_externality(const AllocationSchedule& q, const Scenario& s);

/// An attaining (or limiting) strategy for worst_case_externality. Atoms and
/// indicator profiles are scaled to hit the mean constraint exactly; ties
/// between equally bad strategies resolve to the smallest index.
ConditionalMean nature_best_response(const AllocationSchedule& q, const Scenario& s);

/// Worst-case external term when the effect is additionally bounded above by
/// xi_bar. Only the Positive / Unknown regime admits this refinement here;
/// other regimes throw Error(WrongRegime), a missing bound throws
/// Error(MissingBound). The value is xi_bar times the lower-tail average of q
/// over the fraction alpha = mu / xi_bar of type mass, splitting the atom
/// that straddles the alpha boundary proportionally.
double worst_case_bounded(const AllocationSchedule& q, const Scenario& s);

/// Strategy concentrating the whole mean budget on the lowest 1/n of type
/// mass: m = n*mu on that tail, 0 elsewhere. Feasible on a discrete grid only
/// when some prefix of the weights sums to exactly 1/n; concentration_levels
/// lists the n for which that holds. Along feasible n the induced external
/// term decreases to mu * min(q).
ConditionalMean lower_tail_concentration(const Scenario& s, int n);
std::vector<int> concentration_levels(const TypeDistribution& types);

/// Expected private surplus net of resource cost, sum of f * (u(q) - c q).
double surplus(const AllocationSchedule& q, const Scenario& s);

/// surplus + worst-case external term. Uses worst_case_bounded when the
/// scenario carries a support bound and is in the Positive / Unknown regime,
/// the unbounded closed form otherwise.
double worst_case_welfare(const AllocationSchedule& q, const Scenario& s);

/// Writes "theta,weight,m" rows at 12 significant digits.
void write_conditional_mean_csv(std::ostream& os, const ConditionalMean& m, const Scenario& s);

}  // namespace pigou
