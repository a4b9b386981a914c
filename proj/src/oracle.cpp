#include "pigou/oracle.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <vector>

namespace pigou {

std::uint64_t enumeration_count(const Quantization& qz) {
  // C(n_types + n_levels - 1, n_types), multiplicative form; saturates
  // instead of overflowing so require_enumerable can report honestly.
  const std::uint64_t n = static_cast<std::uint64_t>(qz.n_types) + qz.n_levels - 1;
  const std::uint64_t k = qz.n_types;
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (c > (std::uint64_t{1} << 62) / num) return std::uint64_t{1} << 62;
    c = c * num / i;
  }
  return c;
}

void require_enumerable(const Quantization& qz) {
  if (qz.n_types < 1 || qz.n_levels < 2) {
    throw Error(Errc::TooLarge, "quantization needs n_types >= 1 and n_levels >= 2");
  }
  if (qz.n_types > kMaxOracleTypes || qz.n_levels > kMaxOracleLevels ||
      enumeration_count(qz) >= kMaxOracleSchedules) {
    throw Error(Errc::TooLarge, "enumeration of " + std::to_string(qz.n_types) + " types x " +
                                    std::to_string(qz.n_levels) + " levels exceeds the bound");
  }
}

namespace {

// Every nondecreasing assignment of level indices with the first coordinate
// fixed, in lexicographic order.
void enumerate_from(const Array& levels, Array& q, int pos, int min_level,
                    const std::function<void(const Array&)>& fn) {
  const int n = static_cast<int>(q.size());
  if (pos == n) {
    fn(q);
    return;
  }
  for (int l = min_level; l < levels.size(); ++l) {
    q[pos] = levels[l];
    enumerate_from(levels, q, pos + 1, l, fn);
  }
}

Array level_grid(const Quantization& qz, const Scenario& s) {
  Array levels(qz.n_levels);
  for (int l = 0; l < qz.n_levels; ++l) {
    levels[l] = s.cap * static_cast<double>(l) / (qz.n_levels - 1);
  }
  return levels;
}

}  // namespace

void enumerate_schedules(const Quantization& qz, const Scenario& s,
                         const std::function<void(const Array&)>& fn) {
  require_enumerable(qz);
  const Array levels = level_grid(qz, s);
  Array q(qz.n_types);
  enumerate_from(levels, q, 0, 0, fn);
}

double inner_extremum(const AllocationSchedule& q, const Scenario& s, MeanClass cls) {
  const bool minimize = s.sign == ExternalitySign::Positive;
  const Eigen::Index n = q.size();
  const auto& f = s.types.weights();
  double best = 0.0;
  bool first = true;
  auto consider = [&](double v) {
    if (first || (minimize ? v < best : v > best)) best = v;
    first = false;
  };

  switch (cls) {
    case MeanClass::Any:
      // Atom at i: E[m q] = (mu / f_i) * f_i * q_i = mu * q_i.
      for (Eigen::Index i = 0; i < n; ++i) consider(s.mu * q[i]);
      break;
    case MeanClass::Nonincreasing: {
      // Scaled prefix indicators: value is mu times the prefix average of q.
      double num = 0.0, den = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        num += f[k] * q[k];
        den += f[k];
        consider(s.mu * num / den);
      }
      break;
    }
    case MeanClass::Nondecreasing: {
      double num = 0.0, den = 0.0;
      for (Eigen::Index k = n - 1; k >= 0; --k) {
        num += f[k] * q[k];
        den += f[k];
        consider(s.mu * num / den);
      }
      break;
    }
  }
  return s.sign == ExternalitySign::Positive ? best : -best;
}

double inner_min(const AllocationSchedule& q, const Scenario& s) {
  return inner_extremum(q, s, class_for(s.benchmark));
}

double quantization_gap(const Scenario& s, const Quantization& qz) {
  const double delta = s.cap / (qz.n_levels - 1);
  double steepest = 0.0;
  for (Eigen::Index i = 0; i < s.types.size(); ++i) {
    steepest = std::max(steepest, s.utility.marginal(0.0, s.types.grid()[i]));
  }
  return delta * steepest + delta * (s.cost + s.mu);
}

MinimaxResult minimax_bruteforce(const Scenario& s, const Quantization& qz) {
  require_enumerable(qz);
  if (s.types.size() != qz.n_types) {
    throw Error(Errc::OutOfRange, "scenario grid size must equal the quantization's n_types");
  }
  const Array levels = level_grid(qz, s);

  struct Best {
    bool any = false;
    double value = 0.0;
    Array schedule;
    std::uint64_t count = 0;
  };

  // One partition per first-coordinate level, evaluated concurrently. Within
  // a partition enumeration is lexicographic and strict improvement wins, so
  // each partition reports its lexicographically smallest maximizer; the
  // ordered merge below then keeps determinism overall.
  auto run_partition = [&](int first_level) {
    Best best;
    Array q(qz.n_types);
    q[0] = levels[first_level];
    enumerate_from(levels, q, 1, first_level, [&](const Array& values) {
      AllocationSchedule sched{values};
      const double v = surplus(sched, s) + inner_min(sched, s);
      ++best.count;
      if (!best.any || v > best.value) {
        best.any = true;
        best.value = v;
        best.schedule = values;
      }
    });
    return best;
  };

  std::vector<std::future<Best>> parts;
  parts.reserve(qz.n_levels);
  for (int l = 0; l < qz.n_levels; ++l) {
    parts.push_back(std::async(std::launch::async, run_partition, l));
  }

  Best overall;
  for (auto& part : parts) {
    Best b = part.get();
    overall.count += b.count;
    if (b.any && (!overall.any || b.value > overall.value)) {
      overall.any = true;
      overall.value = b.value;
      overall.schedule = std::move(b.schedule);
    }
  }

  MinimaxResult out;
  out.value = overall.value;
  out.schedule = AllocationSchedule(std::move(overall.schedule));
  out.gap = quantization_gap(s, qz);
  out.count = overall.count;
  return out;
}

}  // namespace pigou
