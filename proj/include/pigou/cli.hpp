#pragma once

#include <iosfwd>
#include <string>

#include "pigou/config.hpp"

namespace pigou {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // parse or usage error
inline constexpr int kExitInvalid = 3;     // scenario fails validation
inline constexpr int kExitSweepBad = 4;    // a swept value broke validity
inline constexpr int kExitOracleFail = 5;  // oracle disagrees beyond the gap
inline constexpr int kExitTooLarge = 6;    // enumeration bound exceeded

/// Each run_* reads the config at config_path, writes its artifacts under
/// out_root/<content-hash>/ and prints a one-line summary; the return value
/// is the process exit code. Reports echo the scenario, and all numbers are
/// formatted at 12 significant digits so identical inputs give identical
/// bytes. Wall time goes to the summary line only, never into files.

int run_solve(const std::string& config_path, const std::string& out_root, double u0,
              std::ostream& out, std::ostream& err);

int run_sweep(const std::string& config_path, const std::string& out_root,
              const std::string& param, double lo, double hi, int steps, double u0,
              std::ostream& out, std::ostream& err);

/// corrupt shifts the solver's policy parameter before re-evaluating it (a
/// negative control for the comparison logic); 0 disables it.
int run_oracle_check(const std::string& config_path, const std::string& out_root,
                     int n_types, int n_levels, double corrupt, std::ostream& out,
                     std::ostream& err);

/// Evaluates worst-case welfare of a schedule CSV against the config's
/// scenario. Prints the value; writes nothing.
int run_eval(const std::string& config_path, const std::string& schedule_csv_path,
             std::ostream& out, std::ostream& err);

}  // namespace pigou
