#include "pigou/core.hpp"

#include <algorithm>
#include <cmath>

namespace pigou {

double UtilityModel::value(double q, double theta) const {
  switch (family) {
    case UtilityFamily::Quadratic:
      return theta * q - 0.5 * beta * q * q;
    case UtilityFamily::LinearUnitDemand:
      return theta * q;
  }
  return 0.0;
}

double UtilityModel::marginal(double q, double theta) const {
  switch (family) {
    case UtilityFamily::Quadratic:
      return theta - beta * q;
    case UtilityFamily::LinearUnitDemand:
      return theta;
  }
  return 0.0;
}

double UtilityModel::type_marginal(double q, double /*theta*/) const {
  // Both families are linear in theta with slope q, so the envelope
  // integrand is the allocation itself.
  return q;
}

TypeDistribution::TypeDistribution(Array grid, Array weights)
    : grid_(std::move(grid)), weights_(std::move(weights)) {
  cdf_ = Array(weights_.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    acc += weights_[i];
    cdf_[i] = acc;
  }
  if (cdf_.size() > 0) cdf_[cdf_.size() - 1] = 1.0;
}

TypeDistribution TypeDistribution::uniform(double lo, double hi, int n) {
  Array grid(n), weights(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = lo + (hi - lo) * (i + 0.5) / n;  // cell midpoints
    weights[i] = 1.0 / n;
  }
  return TypeDistribution(std::move(grid), std::move(weights));
}

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::vector<Violation> validate(const Scenario& s) {
  std::vector<Violation> out;
  const auto& grid = s.types.grid();
  const auto& w = s.types.weights();

  if (s.utility.family == UtilityFamily::Quadratic &&
      !(finite(s.utility.beta) && s.utility.beta > 0.0)) {
    out.push_back({"utility.beta", "quadratic curvature must be positive and finite"});
  }
  if (grid.size() == 0) {
    out.push_back({"types", "type grid is empty"});
  }
  if (grid.size() != w.size()) {
    out.push_back({"types", "grid and weight lengths differ"});
  }
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (!finite(grid[i]) || grid[i] < 0.0) {
      out.push_back({"types.grid", "types must be finite and nonnegative"});
      break;
    }
  }
  for (Eigen::Index i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) {
      out.push_back({"types.grid", "type grid must be strictly increasing"});
      break;
    }
  }
  bool weights_ok = w.size() > 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!finite(w[i]) || w[i] <= 0.0) {
      out.push_back({"types.weights", "weights must be strictly positive"});
      weights_ok = false;
      break;
    }
  }
  if (weights_ok && std::abs(w.sum() - 1.0) > 1e-12) {
    out.push_back({"types.weights", "weights not normalized (sum != 1 within 1e-12)"});
  }
  if (!(finite(s.cost) && s.cost > 0.0)) {
    out.push_back({"cost", "cost must be positive and finite"});
  }
  if (!(finite(s.mu) && s.mu >= 0.0)) {
    out.push_back({"mu", "mean externality must be nonnegative and finite"});
  }
  if (!(finite(s.cap) && s.cap > 0.0)) {
    out.push_back({"cap", "allocation cap must be positive and finite"});
  }
  if (s.xi_bar) {
    if (!finite(*s.xi_bar) || *s.xi_bar < 0.0) {
      out.push_back({"xi_bar", "support bound must be nonnegative and finite"});
    } else if (finite(s.mu) && *s.xi_bar < s.mu) {
      out.push_back({"xi_bar", "support bound below the mean (xi_bar < mu)"});
    }
  }
  return out;
}

double demand(const UtilityModel& u, double p, double theta, double cap) {
  switch (u.family) {
    case UtilityFamily::Quadratic:
      return std::clamp((theta - p) / u.beta, 0.0, cap);
    case UtilityFamily::LinearUnitDemand:
      // Ties theta == p resolve to zero: the indicator is strict.
      return theta > p ? std::min(1.0, cap) : 0.0;
  }
  return 0.0;
}

std::string to_string(ExternalitySign sign) {
  return sign == ExternalitySign::Positive ? "positive" : "negative";
}

std::string to_string(Benchmark benchmark) {
  switch (benchmark) {
    case Benchmark::Unknown: return "unknown";
    case Benchmark::PositiveCorr: return "positive_corr";
    case Benchmark::NegativeCorr: return "negative_corr";
  }
  return "unknown";
}

std::string to_string(UtilityFamily family) {
  return family == UtilityFamily::Quadratic ? "quadratic" : "linear_unit_demand";
}

}  // namespace pigou
