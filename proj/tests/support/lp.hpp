#pragma once

// Minimal dense two-phase simplex, used only in tests as an implementation
// independent of the library's extreme-point reasoning. Minimizes c.x over
// {x >= 0 : A_eq x = b_eq, A_ub x <= b_ub}. Bland's rule, so it terminates.

#include <cstddef>
#include <vector>

namespace pigou::testing {

struct LpProblem {
  std::size_t n = 0;  // number of variables
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ub_rows;
  std::vector<double> ub_rhs;
  std::vector<double> objective;
};

struct LpResult {
  bool ok = false;  // feasible and bounded
  double value = 0.0;
  std::vector<double> x;
};

namespace lp_detail {

constexpr double kEps = 1e-9;

struct Tableau {
  std::size_t rows = 0, cols = 0;  // cols excludes the rhs column
  std::vector<std::vector<double>> t;  // rows x (cols + 1)
  std::vector<std::size_t> basis;

  double& at(std::size_t i, std::size_t j) { return t[i][j]; }
  double rhs(std::size_t i) const { return t[i][cols]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = t[pr][pc];
    for (double& v : t[pr]) v /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr) continue;
      const double factor = t[i][pc];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[pr][j];
    }
    basis[pr] = pc;
  }

  // Minimizes cost over columns marked usable. Returns false when unbounded.
  bool optimize(const std::vector<double>& cost, const std::vector<bool>& usable) {
    for (int iter = 0; iter < 20000; ++iter) {
      // Reduced costs r_j = cost_j - cost_B . column_j (tableau is canonical).
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!usable[j]) continue;
        double r = cost[j];
        for (std::size_t i = 0; i < rows; ++i) r -= cost[basis[i]] * t[i][j];
        if (r < -kEps) {
          enter = j;  // Bland: first improving column
          break;
        }
      }
      if (enter == cols) return true;
      std::size_t leave = rows;
      double best = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][enter] > kEps) {
          const double ratio = rhs(i) / t[i][enter];
          if (leave == rows || ratio < best - kEps ||
              (ratio < best + kEps && basis[i] < basis[leave])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
    return false;
  }
};

}  // namespace lp_detail

inline LpResult solve_lp(const LpProblem& problem) {
  using namespace lp_detail;
  const std::size_t n = problem.n;
  const std::size_t m_eq = problem.eq_rows.size();
  const std::size_t m_ub = problem.ub_rows.size();
  const std::size_t m = m_eq + m_ub;

  // Layout: original | slacks (ub rows) | artificials (one per row).
  Tableau tab;
  tab.rows = m;
  tab.cols = n + m_ub + m;
  tab.t.assign(m, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.assign(m, 0);

  for (std::size_t i = 0; i < m; ++i) {
    const bool is_eq = i < m_eq;
    const auto& row = is_eq ? problem.eq_rows[i] : problem.ub_rows[i - m_eq];
    double rhs = is_eq ? problem.eq_rhs[i] : problem.ub_rhs[i - m_eq];
    double flip = 1.0;
    if (rhs < 0.0) flip = -1.0, rhs = -rhs;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = flip * row[j];
    if (!is_eq) tab.at(i, n + (i - m_eq)) = flip;  // slack
    tab.at(i, n + m_ub + i) = 1.0;                 // artificial
    tab.t[i][tab.cols] = rhs;
    tab.basis[i] = n + m_ub + i;
  }

  std::vector<bool> usable(tab.cols, true);
  std::vector<double> phase1(tab.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + m_ub + i] = 1.0;
  if (!tab.optimize(phase1, usable)) return {};

  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] >= n + m_ub) infeas += tab.rhs(i);
  }
  if (infeas > 1e-7) return {};  // infeasible

  // Drive any zero-level artificial out of the basis so phase 2 cannot grow
  // it; rows with no real coefficients are redundant and stay inert.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n + m_ub) continue;
    for (std::size_t j = 0; j < n + m_ub; ++j) {
      if (tab.at(i, j) > kEps || tab.at(i, j) < -kEps) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Artificials are never allowed back in.
  for (std::size_t j = n + m_ub; j < tab.cols; ++j) usable[j] = false;

  std::vector<double> phase2(tab.cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = problem.objective[j];
  if (!tab.optimize(phase2, usable)) return {};  // unbounded

  LpResult out;
  out.ok = true;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) out.x[tab.basis[i]] = tab.rhs(i);
  }
  for (std::size_t j = 0; j < n; ++j) out.value += problem.objective[j] * out.x[j];
  return out;
}

}  // namespace pigou::testing
