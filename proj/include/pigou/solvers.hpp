#pragma once

#include "pigou/worstcase.hpp"

namespace pigou {

enum class PolicyKind {
  LaissezFaire,
  Floor,
  Ceiling,
  UniformSubsidy,
  UniformTax,
  Mandate,
  Lottery,
};

std::string to_string(PolicyKind kind);

/// Solved policy. `parameter` is the instrument level: the floor or ceiling
/// quantity, the subsidy or tax per unit, the mandated quantity, or the
/// lottery allocation. LaissezFaire carries the effective bound it replaces
/// (the untouched laissez-faire quantity at the relevant end of the grid).
struct Policy {
  PolicyKind kind = PolicyKind::LaissezFaire;
  double parameter = 0.0;
  AllocationSchedule schedule;
  double guarantee = 0.0;      // worst-case welfare of `schedule`
  double foc_residual = 0.0;   // stationarity residual at `parameter`, 0 at corners
  int iterations = 0;          // bisection steps taken
  std::string note;            // human-readable remark (corner cases, indifference)
};

/// Stops bisection when the bracket is narrower than this.
inline constexpr double kBisectTol = 1e-10;

/// Optimal quantity floor for beneficial effects under the Unknown or
/// NegativeCorr benchmark. The floor level solves
///   sum_i f_i * (c - u_q(qf, theta_i)) * [lf_i < qf] = mu,
/// whose left side is nondecreasing and continuous in qf above the lowest
/// laissez-faire quantity. Returns LaissezFaire when even the entry slope is
/// below mu (only possible when the lowest types buy nothing), and the full
/// corner qf = cap when the left side never reaches mu.
Policy solve_floor(const Scenario& s);

/// Mirror image for harmful effects under Unknown or PositiveCorr: the
/// ceiling solves sum_i f_i * (u_q(qc, theta_i) - c) * [lf_i > qc] = mu with
/// a nonincreasing left side. A full ban (qc = 0) results when even banning
/// everything does not push marginal forgone surplus up to mu.
Policy solve_ceiling(const Scenario& s);

/// Aligned benchmarks collapse to pricing: a subsidy of mu (Positive +
/// PositiveCorr) or a tax of mu (Negative + NegativeCorr) on top of cost.
Policy solve_price(const Scenario& s);

/// Dispatch on (sign, benchmark). Requires strictly concave utility; unit
/// demand scenarios are served by the application-level solvers instead.
Policy solve(const Scenario& s);

/// Schedule induced by an instrument at a given level, used to re-evaluate
/// reported policies independently of the solver that produced them.
AllocationSchedule induced_schedule(PolicyKind kind, double parameter, const Scenario& s);

/// Comparator: pointwise optimum against a known conditional mean, ironed to
/// monotonicity by pooling adjacent violators (weighted pooled first-order
/// condition per pool) and clamped to [0, cap].
struct BayesianSchedule {
  AllocationSchedule schedule;
  bool ironed = false;  // true when any pooling occurred
};

BayesianSchedule bayesian_pointwise(const ConditionalMean& m, const Scenario& s);

}  // namespace pigou
