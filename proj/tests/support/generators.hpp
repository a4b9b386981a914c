#pragma once

// Deterministic random instances for property tests. Every generator takes
// the engine by reference so a test controls its own seed.

#include <algorithm>
#include <random>
#include <vector>

#include "pigou/core.hpp"
#include "pigou/worstcase.hpp"

namespace pigou::testing {

inline Array random_monotone(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  std::sort(v.begin(), v.end());
  return Eigen::Map<const Array>(v.data(), n);
}

inline TypeDistribution random_types(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> g(n);
  for (double& x : g) x = u(rng);
  std::sort(g.begin(), g.end());
  for (int i = 1; i < n; ++i) {
    if (g[i] - g[i - 1] < 1e-4) g[i] = g[i - 1] + 1e-4;  // keep strictly increasing
  }
  Array grid = Eigen::Map<const Array>(g.data(), n);
  Array w(n);
  std::uniform_real_distribution<double> wu(0.2, 1.0);
  for (int i = 0; i < n; ++i) w[i] = wu(rng);
  w /= w.sum();
  // Force the exact-sum invariant despite rounding.
  w[n - 1] += 1.0 - w.sum();
  return TypeDistribution(std::move(grid), std::move(w));
}

inline Scenario random_quadratic_scenario(std::mt19937_64& rng, int n, ExternalitySign sign,
                                          Benchmark benchmark) {
  std::uniform_real_distribution<double> beta_u(0.5, 2.0), cost_u(0.2, 0.9), mu_u(0.01, 0.5),
      cap_u(0.8, 1.5);
  Scenario s;
  s.utility = UtilityModel::quadratic(beta_u(rng));
  s.types = random_types(rng, n);
  s.cost = cost_u(rng);
  s.mu = mu_u(rng);
  s.cap = cap_u(rng);
  s.sign = sign;
  s.benchmark = benchmark;
  return s;
}

// Random feasible Nature strategy: nonnegative, in the declared class, with
// weighted mean scaled to exactly the scenario's mu.
inline ConditionalMean random_conditional_mean(std::mt19937_64& rng, const Scenario& s,
                                               MeanClass cls) {
  const int n = static_cast<int>(s.types.size());
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Array raw(n);
  for (int i = 0; i < n; ++i) raw[i] = u(rng);
  if (cls == MeanClass::Nondecreasing || cls == MeanClass::Nonincreasing) {
    std::sort(raw.data(), raw.data() + n);
    if (cls == MeanClass::Nonincreasing) std::reverse(raw.data(), raw.data() + n);
  }
  const double mean = (raw * s.types.weights()).sum();
  ConditionalMean m;
  m.values = raw * (s.mu / mean);
  m.monotone_class = cls;
  return m;
}

}  // namespace pigou::testing
