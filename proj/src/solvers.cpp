#include "pigou/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pigou {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::LaissezFaire: return "laissez_faire";
    case PolicyKind::Floor: return "floor";
    case PolicyKind::Ceiling: return "ceiling";
    case PolicyKind::UniformSubsidy: return "uniform_subsidy";
    case PolicyKind::UniformTax: return "uniform_tax";
    case PolicyKind::Mandate: return "mandate";
    case PolicyKind::Lottery: return "lottery";
  }
  return "laissez_faire";
}

namespace {

void require_concave(const Scenario& s, const char* who) {
  if (!s.utility.strictly_concave()) {
    throw Error(Errc::WrongUtility,
                std::string(who) + " needs strictly concave utility; "
                "unit-demand scenarios are handled by the application solvers");
  }
}

Policy finish(Policy p, const Scenario& s) {
  p.guarantee = worst_case_welfare(p.schedule, s);
  return p;
}

}  // namespace

Policy solve_floor(const Scenario& s) {
  if (s.sign != ExternalitySign::Positive || s.benchmark == Benchmark::PositiveCorr) {
    throw Error(Errc::WrongRegime,
                "floor solves Positive sign under Unknown or NegativeCorr only");
  }
  require_concave(s, "solve_floor");

  const AllocationSchedule lf = laissez_faire(s);
  const auto& grid = s.types.grid();
  const auto& f = s.types.weights();
  const double lo = lf.values().minCoeff();

  // Marginal cost of pushing the floor past qf: types already above it are
  // untouched, types at the floor lose (c - u_q) per unit each.
  auto lhs = [&](double qf) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      if (lf[i] < qf) acc += f[i] * (s.cost - s.utility.marginal(qf, grid[i]));
    }
    return acc;
  };

  // Entry slope just above lo. Zero when the lowest types consume interior
  // amounts (their marginal utility equals cost there); positive only when
  // they are stuck at zero, which is the one case a floor can fail to pay.
  // Each term is nonnegative up to rounding; the clamp keeps it that way.
  double entry = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (lf[i] <= lo) entry += f[i] * std::max(0.0, s.cost - s.utility.marginal(lo, grid[i]));
  }

  Policy p;
  if (s.mu <= entry) {
    p.kind = PolicyKind::LaissezFaire;
    p.parameter = lo;
    p.schedule = lf;
    p.note = "floor not binding";
    return finish(std::move(p), s);
  }

  p.kind = PolicyKind::Floor;
  double a = lo, b = s.cap;
  if (lhs(s.cap) < s.mu) {
    p.parameter = s.cap;
    p.note = "corner: floor at the cap";
  } else {
    while (b - a > kBisectTol) {
      const double mid = 0.5 * (a + b);
      (lhs(mid) < s.mu ? a : b) = mid;
      ++p.iterations;
    }
    p.parameter = 0.5 * (a + b);
    p.foc_residual = lhs(p.parameter) - s.mu;
  }
  p.schedule = AllocationSchedule(lf.values().max(p.parameter));
  return finish(std::move(p), s);
}

Policy solve_ceiling(const Scenario& s) {
  if (s.sign != ExternalitySign::Negative || s.benchmark == Benchmark::NegativeCorr) {
    throw Error(Errc::WrongRegime,
                "ceiling solves Negative sign under Unknown or PositiveCorr only");
  }
  require_concave(s, "solve_ceiling");

  const AllocationSchedule lf = laissez_faire(s);
  const auto& grid = s.types.grid();
  const auto& f = s.types.weights();
  const double hi = lf.values().maxCoeff();

  // Marginal surplus forgone by tightening the ceiling below qc, summed over
  // the types it binds. Nonincreasing in qc.
  auto rhs = [&](double qc) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      if (lf[i] > qc) acc += f[i] * (s.utility.marginal(qc, grid[i]) - s.cost);
    }
    return acc;
  };

  // Exit slope just below hi: zero for interior top types, positive when the
  // cap clamps them (marginal utility still above cost at the cap). Each term
  // is nonnegative up to rounding; the clamp keeps it that way.
  double exit_slope = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (lf[i] >= hi) exit_slope += f[i] * std::max(0.0, s.utility.marginal(hi, grid[i]) - s.cost);
  }

  Policy p;
  if (s.mu <= exit_slope) {
    p.kind = PolicyKind::LaissezFaire;
    p.parameter = hi;
    p.schedule = lf;
    p.note = "ceiling not binding";
    return finish(std::move(p), s);
  }

  p.kind = PolicyKind::Ceiling;
  double a = 0.0, b = hi;
  if (rhs(0.0) < s.mu) {
    p.parameter = 0.0;
    p.note = "corner: full ban";
  } else {
    while (b - a > kBisectTol) {
      const double mid = 0.5 * (a + b);
      (rhs(mid) >= s.mu ? a : b) = mid;
      ++p.iterations;
    }
    p.parameter = 0.5 * (a + b);
    p.foc_residual = rhs(p.parameter) - s.mu;
  }
  p.schedule = AllocationSchedule(lf.values().min(p.parameter));
  return finish(std::move(p), s);
}

Policy solve_price(const Scenario& s) {
  const bool subsidy =
      s.sign == ExternalitySign::Positive && s.benchmark == Benchmark::PositiveCorr;
  const bool tax =
      s.sign == ExternalitySign::Negative && s.benchmark == Benchmark::NegativeCorr;
  if (!subsidy && !tax) {
    throw Error(Errc::WrongRegime,
                "pricing is optimal only when the benchmark aligns with the sign");
  }
  require_concave(s, "solve_price");

  Policy p;
  if (s.mu <= 0.0) {
    p.kind = PolicyKind::LaissezFaire;
    p.parameter = 0.0;
    p.schedule = laissez_faire(s);
    p.note = "zero wedge";
    return finish(std::move(p), s);
  }
  p.kind = subsidy ? PolicyKind::UniformSubsidy : PolicyKind::UniformTax;
  p.parameter = s.mu;
  const double price = subsidy ? s.cost - s.mu : s.cost + s.mu;
  Array q(s.types.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    q[i] = demand(s.utility, price, s.types.grid()[i], s.cap);
  }
  p.schedule = AllocationSchedule(std::move(q));
  return finish(std::move(p), s);
}

Policy solve(const Scenario& s) {
  if (!s.utility.strictly_concave()) {
    throw Error(Errc::Unsupported,
                "unit-demand scenarios are solved by the application-level policies");
  }
  if (s.sign == ExternalitySign::Positive) {
    return s.benchmark == Benchmark::PositiveCorr ? solve_price(s) : solve_floor(s);
  }
  return s.benchmark == Benchmark::NegativeCorr ? solve_price(s) : solve_ceiling(s);
}

AllocationSchedule induced_schedule(PolicyKind kind, double parameter, const Scenario& s) {
  const double bounded = std::clamp(parameter, 0.0, s.cap);
  switch (kind) {
    case PolicyKind::LaissezFaire:
      return laissez_faire(s);
    case PolicyKind::Floor:
      return AllocationSchedule(laissez_faire(s).values().max(bounded));
    case PolicyKind::Ceiling:
      return AllocationSchedule(laissez_faire(s).values().min(bounded));
    case PolicyKind::UniformSubsidy:
    case PolicyKind::UniformTax: {
      const double price =
          kind == PolicyKind::UniformSubsidy ? s.cost - parameter : s.cost + parameter;
      Array q(s.types.size());
      for (Eigen::Index i = 0; i < q.size(); ++i) {
        q[i] = demand(s.utility, price, s.types.grid()[i], s.cap);
      }
      return AllocationSchedule(std::move(q));
    }
    case PolicyKind::Mandate:
    case PolicyKind::Lottery:
      return AllocationSchedule(Array::Constant(s.types.size(), bounded));
  }
  return laissez_faire(s);
}

BayesianSchedule bayesian_pointwise(const ConditionalMean& m, const Scenario& s) {
  require_concave(s, "bayesian_pointwise");
  const auto& grid = s.types.grid();
  const auto& f = s.types.weights();
  const Eigen::Index n = grid.size();

  // Unclamped pointwise maximizer of u(q, theta_i) - (c -/+ m_i) q. Pooling
  // happens on unclamped values (clamping to [0, cap] is monotone, so it
  // commutes with the pooled first-order condition for the quadratic family).
  Array x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double wedge =
        s.sign == ExternalitySign::Positive ? s.cost - m.values[i] : s.cost + m.values[i];
    x[i] = (grid[i] - wedge) / s.utility.beta;
  }

  struct Pool {
    Eigen::Index begin, end;
    double weight, weighted_sum;
    double value() const { return weighted_sum / weight; }
  };
  std::vector<Pool> pools;
  bool ironed = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    pools.push_back({i, i, f[i], f[i] * x[i]});
    while (pools.size() >= 2 &&
           pools[pools.size() - 2].value() > pools.back().value()) {
      const Pool top = pools.back();
      pools.pop_back();
      pools.back().end = top.end;
      pools.back().weight += top.weight;
      pools.back().weighted_sum += top.weighted_sum;
      ironed = true;
    }
  }

  Array q(n);
  for (const Pool& pool : pools) {
    const double v = std::clamp(pool.value(), 0.0, s.cap);
    for (Eigen::Index i = pool.begin; i <= pool.end; ++i) q[i] = v;
  }
  return {AllocationSchedule(std::move(q)), ironed};
}

}  // namespace pigou
