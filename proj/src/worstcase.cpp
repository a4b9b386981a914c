#include "pigou/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pigou/format.hpp"

namespace pigou {

MeanClass class_for(Benchmark benchmark) {
  switch (benchmark) {
    case Benchmark::Unknown: return MeanClass::Any;
    case Benchmark::PositiveCorr: return MeanClass::Nondecreasing;
    case Benchmark::NegativeCorr: return MeanClass::Nonincreasing;
  }
  return MeanClass::Any;
}

std::vector<Violation> validate(const ConditionalMean& m, const Scenario& s) {
  std::vector<Violation> out;
  if (m.values.size() != s.types.size()) {
    out.push_back({"m", "length does not match the type grid"});
    return out;
  }
  for (Eigen::Index i = 0; i < m.values.size(); ++i) {
    if (!(std::isfinite(m.values[i]) && m.values[i] >= -1e-12)) {
      out.push_back({"m", "conditional means must be nonnegative"});
      break;
    }
  }
  const double mean = (m.values * s.types.weights()).sum();
  if (std::abs(mean - s.mu) > 1e-9) {
    out.push_back({"m", "weighted mean is " + fmt12(mean) + ", expected mu = " + fmt12(s.mu)});
  }
  for (Eigen::Index i = 0; i + 1 < m.values.size(); ++i) {
    if (m.monotone_class == MeanClass::Nondecreasing &&
        m.values[i + 1] < m.values[i] - 1e-9) {
      out.push_back({"m", "not nondecreasing as declared"});
      break;
    }
    if (m.monotone_class == MeanClass::Nonincreasing &&
        m.values[i + 1] > m.values[i] + 1e-9) {
      out.push_back({"m", "not nonincreasing as declared"});
      break;
    }
  }
  return out;
}

double worst_case_externality(const AllocationSchedule& q, const Scenario& s) {
  const ScheduleStats st = schedule_stats(q, s);
  if (s.sign == ExternalitySign::Positive) {
    switch (s.benchmark) {
      case Benchmark::Unknown:
      case Benchmark::NegativeCorr: return s.mu * st.min;
      case Benchmark::PositiveCorr: return s.mu * st.mean;
    }
  } else {
    switch (s.benchmark) {
      case Benchmark::Unknown:
      case Benchmark::PositiveCorr: return -s.mu * st.max;
      case Benchmark::NegativeCorr: return -s.mu * st.mean;
    }
  }
  return 0.0;
}

namespace {

// Prefix averages (sum over i <= k of f q) / F_k for k = 0..n-1.
Array prefix_averages(const AllocationSchedule& q, const Scenario& s) {
  const Eigen::Index n = q.size();
  Array avg(n);
  double num = 0.0, den = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    num += s.types.weights()[k] * q[k];
    den += s.types.weights()[k];
    avg[k] = num / den;
  }
  return avg;
}

// Suffix averages for k = 0..n-1 (average of q over i >= k).
Array suffix_averages(const AllocationSchedule& q, const Scenario& s) {
  const Eigen::Index n = q.size();
  Array avg(n);
  double num = 0.0, den = 0.0;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    num += s.types.weights()[k] * q[k];
    den += s.types.weights()[k];
    avg[k] = num / den;
  }
  return avg;
}

// Smallest index attaining the min (or max) of v.
Eigen::Index arg_best(const Array& v, bool minimize) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (minimize ? v[i] < v[best] : v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

ConditionalMean nature_best_response(const AllocationSchedule& q, const Scenario& s) {
  const bool minimize = s.sign == ExternalitySign::Positive;
  const MeanClass cls = class_for(s.benchmark);
  const Eigen::Index n = q.size();
  ConditionalMean m;
  m.monotone_class = cls;
  m.values = Array::Zero(n);

  switch (cls) {
    case MeanClass::Any: {
      // Atom strategies: all mass at one grid point, scaled to mean mu.
      const Eigen::Index i = arg_best(q.values(), minimize);
      m.values[i] = s.mu / s.types.weights()[i];
      break;
    }
    case MeanClass::Nonincreasing: {
      const Array avg = prefix_averages(q, s);
      const Eigen::Index k = arg_best(avg, minimize);
      const double level = s.mu / s.types.cdf()[k];
      for (Eigen::Index i = 0; i <= k; ++i) m.values[i] = level;
      break;
    }
    case MeanClass::Nondecreasing: {
      const Array avg = suffix_averages(q, s);
      const Eigen::Index k = arg_best(avg, minimize);
      double tail = 0.0;
      for (Eigen::Index i = k; i < n; ++i) tail += s.types.weights()[i];
      const double level = s.mu / tail;
      for (Eigen::Index i = k; i < n; ++i) m.values[i] = level;
      break;
    }
  }
  return m;
}

double worst_case_bounded(const AllocationSchedule& q, const Scenario& s) {
  if (!s.xi_bar) {
    throw Error(Errc::MissingBound, "worst_case_bounded requires xi_bar");
  }
  if (s.sign != ExternalitySign::Positive || s.benchmark != Benchmark::Unknown) {
    throw Error(Errc::WrongRegime,
                "support-bounded worst case applies to the Positive/Unknown regime");
  }
  if (s.mu <= 0.0) return 0.0;
  const double alpha = s.mu / *s.xi_bar;
  // Integrate the quantile function of q over [0, alpha]: walk the grid in
  // type order (q is nondecreasing, so this is the quantile order) and take
  // each atom's weight until alpha is exhausted.
  double acc = 0.0;
  double lo = 0.0;
  for (Eigen::Index i = 0; i < q.size() && lo < alpha; ++i) {
    const double hi = std::min(static_cast<double>(s.types.cdf()[i]), alpha);
    if (hi > lo) acc += q[i] * (hi - lo);
    lo = std::max(lo, static_cast<double>(s.types.cdf()[i]));
  }
  return *s.xi_bar * acc;
}

ConditionalMean lower_tail_concentration(const Scenario& s, int n) {
  const double target = 1.0 / n;
  const auto& cdf = s.types.cdf();
  Eigen::Index cut = -1;
  for (Eigen::Index i = 0; i < cdf.size(); ++i) {
    if (std::abs(cdf[i] - target) <= 1e-12) {
      cut = i;
      break;
    }
  }
  if (cut < 0) {
    throw Error(Errc::Unsupported,
                "no grid prefix carries weight exactly 1/" + std::to_string(n));
  }
  ConditionalMean m;
  m.monotone_class = MeanClass::Nonincreasing;
  m.values = Array::Zero(s.types.size());
  for (Eigen::Index i = 0; i <= cut; ++i) m.values[i] = s.mu * n;
  return m;
}

std::vector<int> concentration_levels(const TypeDistribution& types) {
  std::vector<int> out;
  const auto& cdf = types.cdf();
  // n is feasible iff some prefix weight equals 1/n exactly, so test each
  // cut's weight for being a reciprocal integer.
  for (Eigen::Index i = 0; i < cdf.size(); ++i) {
    const double inv = 1.0 / cdf[i];
    const int n = static_cast<int>(std::lround(inv));
    if (n >= 1 && std::abs(cdf[i] - 1.0 / n) <= 1e-12) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double surplus(const AllocationSchedule& q, const Scenario& s) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    acc += s.types.weights()[i] *
           (s.utility.value(q[i], s.types.grid()[i]) - s.cost * q[i]);
  }
  return acc;
}

double worst_case_welfare(const AllocationSchedule& q, const Scenario& s) {
  const bool bounded = s.xi_bar && s.sign == ExternalitySign::Positive &&
                       s.benchmark == Benchmark::Unknown;
  return surplus(q, s) + (bounded ? worst_case_bounded(q, s) : worst_case_externality(q, s));
}

void write_conditional_mean_csv(std::ostream& os, const ConditionalMean& m, const Scenario& s) {
  os << "theta,weight,m\n";
  for (Eigen::Index i = 0; i < s.types.size(); ++i) {
    os << fmt12(s.types.grid()[i]) << ',' << fmt12(s.types.weights()[i]) << ','
       << fmt12(m.values[i]) << '\n';
  }
}

}  // namespace pigou
