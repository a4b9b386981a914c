#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pigou/core.hpp"

namespace pigou {

/// Raised on malformed config text or schema violations (unknown key, bad
/// enum value, missing required key). Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

/// key = value lines; '#' starts a comment, blank lines ignored.
struct ParsedConfig {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string text;  // raw bytes, hashed for the output directory key
};

ParsedConfig parse_config_text(const std::string& text);

/// A fully resolved run: the scenario plus application routing and the
/// knobs the applications need. Type-grid provenance is kept so the oracle
/// can re-discretize the same family at a coarser resolution.
struct RunConfig {
  Scenario scenario;
  std::string application;  // "", "vaccines", "abatement", "screening"
  double cost_gamma = 1.0;  // abatement only
  double capacity_q = 0.0;  // screening only
  std::string types_family = "uniform";
  double types_lo = 0.0;
  double types_hi = 1.0;
  int types_n = 0;
};

/// Schema errors throw ConfigError; value-level problems (negative mu,
/// xi_bar below mu, ...) are left for validate().
RunConfig build_run_config(const ParsedConfig& parsed);

/// Scenario validation plus application-level checks (gamma > 0, Q in (0,1)).
std::vector<Violation> validate(const RunConfig& config);

}  // namespace pigou
