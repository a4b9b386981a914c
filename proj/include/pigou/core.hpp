#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pigou/error.hpp"

namespace pigou {

using Array = Eigen::ArrayXd;

/// Direction of the external effect produced by the regulated activity.
/// Positive: each unit of activity confers an external benefit with known
/// mean mu (floors, subsidies, mandates are the natural instruments).
/// Negative: each unit imposes external harm with known mean mu (ceilings
/// and taxes). Welfare adds the effect with this sign on top of private
/// surplus net of resource cost.
enum class ExternalitySign { Positive, Negative };

/// What the regulator is willing to assume about how the external effect
/// co-moves with private benefit across types.
///   Unknown       - no restriction beyond the known mean.
///   PositiveCorr  - conditional mean nondecreasing in the type.
///   NegativeCorr  - conditional mean nonincreasing in the type.
enum class Benchmark { Unknown, PositiveCorr, NegativeCorr };

enum class UtilityFamily { Quadratic, LinearUnitDemand };

/// Private-benefit model. Quadratic: u(q, theta) = theta*q - beta*q^2/2 with
/// beta > 0. LinearUnitDemand: u(q, theta) = theta*q with q restricted to
/// [0, 1]. Both families satisfy strict single crossing in (q, theta): the
/// cross partial u_{q theta} = 1.
struct UtilityModel {
  UtilityFamily family = UtilityFamily::Quadratic;
  double beta = 1.0;  // curvature, used by Quadratic only

  static UtilityModel quadratic(double beta) { return {UtilityFamily::Quadratic, beta}; }
  static UtilityModel unit_demand() { return {UtilityFamily::LinearUnitDemand, 0.0}; }

  double value(double q, double theta) const;
  double marginal(double q, double theta) const;       // u_q
  double type_marginal(double q, double theta) const;  // u_theta

  bool strictly_concave() const { return family == UtilityFamily::Quadratic; }
};

/// Discrete type distribution on an increasing grid of nonnegative types.
/// Weights are strictly positive and sum to one; cdf() caches the running sum
/// with the last entry forced to exactly 1.
class TypeDistribution {
 public:
  TypeDistribution() = default;
  TypeDistribution(Array grid, Array weights);

  /// Midpoint discretization of Uniform[lo, hi] into n equally likely cells.
  static TypeDistribution uniform(double lo, double hi, int n);

  const Array& grid() const { return grid_; }
  const Array& weights() const { return weights_; }
  const Array& cdf() const { return cdf_; }
  Eigen::Index size() const { return grid_.size(); }

  double mean() const { return (grid_ * weights_).sum(); }

 private:
  Array grid_;
  Array weights_;
  Array cdf_;
};

/// One regulation problem: who the agents are, what the activity costs
/// society per unit, and what is known about the external effect.
struct Scenario {
  UtilityModel utility;
  TypeDistribution types;
  double cost = std::numeric_limits<double>::quiet_NaN();  // resource cost c per unit
  double mu = std::numeric_limits<double>::quiet_NaN();    // known mean of the external effect
  double cap = std::numeric_limits<double>::quiet_NaN();   // allocation bound A
  ExternalitySign sign = ExternalitySign::Positive;
  Benchmark benchmark = Benchmark::Unknown;
  std::optional<double> xi_bar;  // optional support bound on the effect, xi_bar >= mu
};

struct Violation {
  std::string field;
  std::string message;
};

/// Checks a scenario for internal consistency. Returns every violation found
/// rather than stopping at the first; an empty vector means the scenario is
/// usable by all solvers.
std::vector<Violation> validate(const Scenario& s);

/// Quantity demanded by type theta facing unit price p, clamped to [0, cap].
/// Quadratic: clamp((theta - p)/beta); LinearUnitDemand: indicator theta > p.
double demand(const UtilityModel& u, double p, double theta, double cap);

std::string to_string(ExternalitySign sign);
std::string to_string(Benchmark benchmark);
std::string to_string(UtilityFamily family);

}  // namespace pigou
