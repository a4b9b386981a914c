#pragma once

#include <cstdint>
#include <functional>

#include "pigou/solvers.hpp"

namespace pigou {

/// Resolution of the brute-force search: schedules are nondecreasing maps
/// from an n_types grid into n_levels equally spaced quantities in [0, cap].
struct Quantization {
  int n_types = 5;
  int n_levels = 7;
};

inline constexpr int kMaxOracleTypes = 7;
inline constexpr int kMaxOracleLevels = 9;
inline constexpr std::uint64_t kMaxOracleSchedules = 1000000;

/// Number of nondecreasing schedules at this resolution,
/// C(n_types + n_levels - 1, n_types).
std::uint64_t enumeration_count(const Quantization& qz);

/// Throws Error(TooLarge) when the resolution exceeds the supported bounds
/// or the enumeration count reaches kMaxOracleSchedules.
void require_enumerable(const Quantization& qz);

/// Calls fn once per nondecreasing schedule, in lexicographic order of level
/// indices. The scenario supplies only the cap (level spacing) and the grid
/// size must equal qz.n_types.
void enumerate_schedules(const Quantization& qz, const Scenario& s,
                         const std::function<void(const Array&)>& fn);

/// Nature's exact optimum against an arbitrary (not necessarily monotone)
/// schedule, found by scanning the extreme points of the feasible class:
/// single atoms for Any, scaled prefix indicators for Nonincreasing, scaled
/// suffix indicators for Nondecreasing. Signed like worst_case_externality.
double inner_extremum(const AllocationSchedule& q, const Scenario& s, MeanClass cls);

/// inner_extremum at the class implied by the scenario's benchmark.
double inner_min(const AllocationSchedule& q, const Scenario& s);

struct MinimaxResult {
  double value = 0.0;
  AllocationSchedule schedule;  // lexicographically smallest maximizer
  double gap = 0.0;             // quantization_gap at this resolution
  std::uint64_t count = 0;      // schedules examined
};

/// Exhaustive max-min over the quantized schedule space. Partitions the
/// enumeration by the first coordinate across threads; the merge is ordered,
/// so the result is deterministic.
MinimaxResult minimax_bruteforce(const Scenario& s, const Quantization& qz);

/// Upper bound on how much quantizing quantities to n_levels can cost:
/// one level spacing times the steepest possible marginal surplus plus the
/// external term's Lipschitz constant, delta * (max_i u_q(0, theta_i) + c + mu).
double quantization_gap(const Scenario& s, const Quantization& qz);

}  // namespace pigou
