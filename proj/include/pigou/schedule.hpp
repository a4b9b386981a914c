#pragma once

#include <iosfwd>
#include <vector>

#include "pigou/core.hpp"

namespace pigou {

/// Slack allowed when checking monotonicity and range of a schedule. Covers
/// round-tripping through 12-significant-digit text without rejecting
/// schedules that are monotone up to formatting noise.
inline constexpr double kMonotoneSlack = 1e-9;

/// Slack allowed on incentive constraints before a pair is reported.
inline constexpr double kIcSlack = 1e-9;

/// Allocation as a function of type on the scenario grid. Valid schedules are
/// nondecreasing and stay inside [0, cap]; construction through make_schedule
/// enforces that, the raw constructor does not.
class AllocationSchedule {
 public:
  AllocationSchedule() = default;
  explicit AllocationSchedule(Array values) : values_(std::move(values)) {}

  const Array& values() const { return values_; }
  double operator[](Eigen::Index i) const { return values_[i]; }
  Eigen::Index size() const { return values_.size(); }

 private:
  Array values_;
};

/// Validating constructor. Throws Error(NonMonotone, i) at the first index
/// where values decrease by more than kMonotoneSlack, Error(OutOfRange, i)
/// where values leave [-kMonotoneSlack, cap + kMonotoneSlack], and requires
/// the length to match the type grid.
AllocationSchedule make_schedule(const Eigen::Ref<const Array>& values, const Scenario& s);

/// Schedule chosen by unregulated agents facing price equal to resource cost.
AllocationSchedule laissez_faire(const Scenario& s);

struct ScheduleStats {
  double min;
  double max;
  double mean;  // weighted by the type distribution
};

ScheduleStats schedule_stats(const AllocationSchedule& q, const Scenario& s);

/// Direct mechanism: allocation plus the transfers that implement it.
/// utilities[i] is the information rent U(theta_i) = u(q_i, theta_i) - t_i.
struct Mechanism {
  AllocationSchedule schedule;
  Array transfers;
  Array utilities;
  double u0 = 0.0;  // rent granted to the lowest type
};

/// Envelope transfers for a monotone schedule: rents accumulate the type
/// derivative of utility along the grid (left Riemann sum), and transfers
/// are whatever makes utilities match. The result is incentive compatible on
/// the grid for both utility families.
Mechanism transfers_from_allocation(const AllocationSchedule& q, const Scenario& s, double u0 = 0.0);

struct IcViolation {
  Eigen::Index truthful;  // type doing the deviating
  Eigen::Index imitated;  // report that beats truth-telling
  double gain;
};

/// All-pairs incentive check. Empty result means no type gains more than
/// kIcSlack by imitating another.
std::vector<IcViolation> verify_ic(const Mechanism& mech, const Scenario& s);

/// Writes "theta,weight,q,t,U" rows at 12 significant digits.
void write_mechanism_csv(std::ostream& os, const Mechanism& mech, const Scenario& s);

/// Reads the q column back from a mechanism CSV (header required). Throws
/// std::runtime_error on malformed rows.
Array read_schedule_csv(std::istream& is);

}  // namespace pigou
