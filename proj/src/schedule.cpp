#include "pigou/schedule.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pigou/format.hpp"

namespace pigou {

AllocationSchedule make_schedule(const Eigen::Ref<const Array>& values, const Scenario& s) {
  if (values.size() != s.types.size()) {
    throw Error(Errc::OutOfRange,
                "schedule length " + std::to_string(values.size()) +
                    " does not match grid size " + std::to_string(s.types.size()));
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values[i] >= -kMonotoneSlack && values[i] <= s.cap + kMonotoneSlack)) {
      throw Error(Errc::OutOfRange, "schedule value outside [0, cap] at index " +
                      std::to_string(i), i);
    }
    if (i > 0 && values[i] < values[i - 1] - kMonotoneSlack) {
      throw Error(Errc::NonMonotone, "schedule decreases at index " + std::to_string(i), i);
    }
  }
  return AllocationSchedule(values);
}

AllocationSchedule laissez_faire(const Scenario& s) {
  Array q(s.types.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    q[i] = demand(s.utility, s.cost, s.types.grid()[i], s.cap);
  }
  return AllocationSchedule(std::move(q));
}

ScheduleStats schedule_stats(const AllocationSchedule& q, const Scenario& s) {
  return {q.values().minCoeff(), q.values().maxCoeff(),
          (q.values() * s.types.weights()).sum()};
}

Mechanism transfers_from_allocation(const AllocationSchedule& q, const Scenario& s, double u0) {
  const auto& grid = s.types.grid();
  const Eigen::Index n = grid.size();
  Array U(n), t(n);
  double acc = u0;
  for (Eigen::Index i = 0; i < n; ++i) {
    U[i] = acc;
    t[i] = s.utility.value(q[i], grid[i]) - U[i];
    if (i + 1 < n) acc += s.utility.type_marginal(q[i], grid[i]) * (grid[i + 1] - grid[i]);
  }
  return {q, std::move(t), std::move(U), u0};
}

std::vector<IcViolation> verify_ic(const Mechanism& mech, const Scenario& s) {
  std::vector<IcViolation> out;
  const auto& grid = s.types.grid();
  const Eigen::Index n = grid.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double truthful = s.utility.value(mech.schedule[i], grid[i]) - mech.transfers[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double imitate = s.utility.value(mech.schedule[j], grid[i]) - mech.transfers[j];
      if (imitate > truthful + kIcSlack) {
        out.push_back({i, j, imitate - truthful});
      }
    }
  }
  return out;
}

void write_mechanism_csv(std::ostream& os, const Mechanism& mech, const Scenario& s) {
  os << "theta,weight,q,t,U\n";
  for (Eigen::Index i = 0; i < s.types.size(); ++i) {
    os << fmt12(s.types.grid()[i]) << ',' << fmt12(s.types.weights()[i]) << ','
       << fmt12(mech.schedule[i]) << ',' << fmt12(mech.transfers[i]) << ','
       << fmt12(mech.utilities[i]) << '\n';
  }
}

Array read_schedule_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("schedule CSV: empty file");
  // Header must contain a q column; locate it so eval accepts both full
  // mechanism CSVs and bare theta,weight,q files.
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  std::ptrdiff_t q_col = -1;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == "q") q_col = static_cast<std::ptrdiff_t>(k);
  }
  if (q_col < 0) throw std::runtime_error("schedule CSV: no 'q' column in header");

  std::vector<double> q;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::ptrdiff_t col = 0;
    bool found = false;
    while (std::getline(ss, cell, ',')) {
      if (col++ == q_col) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
          v = std::stod(cell, &pos);
        } catch (const std::exception&) {
          throw std::runtime_error("schedule CSV: bad number at row " + std::to_string(row));
        }
        if (pos != cell.size()) {
          throw std::runtime_error("schedule CSV: bad number at row " + std::to_string(row));
        }
        q.push_back(v);
        found = true;
      }
    }
    if (!found) throw std::runtime_error("schedule CSV: short row " + std::to_string(row));
  }
  return Eigen::Map<const Array>(q.data(), static_cast<Eigen::Index>(q.size()));
}

}  // namespace pigou
