#include "pigou/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pigou {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError(key + ": trailing characters in '" + value + "'");
  }
  return out;
}

int parse_positive_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long out = 0;
  try {
    out = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  if (pos != value.size() || out <= 0 || out > 1000000) {
    throw ConfigError(key + ": expected a positive integer, got '" + value + "'");
  }
  return static_cast<int>(out);
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig out;
  out.text = text;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    for (const auto& [k, v] : out.entries) {
      if (k == key) {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      }
    }
    out.entries.emplace_back(key, value);
  }
  return out;
}

RunConfig build_run_config(const ParsedConfig& parsed) {
  std::set<std::string> seen;
  auto find = [&](const std::string& key) -> const std::string* {
    for (const auto& [k, v] : parsed.entries) {
      if (k == key) {
        seen.insert(key);
        return &v;
      }
    }
    return nullptr;
  };
  auto require = [&](const std::string& key) -> const std::string& {
    const std::string* v = find(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  };

  RunConfig cfg;
  if (const std::string* app = find("application")) {
    if (*app != "vaccines" && *app != "abatement" && *app != "screening") {
      throw ConfigError("application: unknown value '" + *app + "'");
    }
    cfg.application = *app;
  }

  // Type grid is common to every application.
  const std::string& family = require("types.family");
  if (family != "uniform") {
    throw ConfigError("types.family: only 'uniform' is supported, got '" + family + "'");
  }
  cfg.types_family = family;
  {
    const std::string& range = require("types.range");
    const auto comma = range.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("types.range: expected 'lo,hi', got '" + range + "'");
    }
    cfg.types_lo = parse_double("types.range", trim(range.substr(0, comma)));
    cfg.types_hi = parse_double("types.range", trim(range.substr(comma + 1)));
  }
  cfg.types_n = parse_positive_int("types.n", require("types.n"));
  cfg.scenario.types = TypeDistribution::uniform(cfg.types_lo, cfg.types_hi, cfg.types_n);
  cfg.scenario.mu = parse_double("mu", require("mu"));

  auto parse_benchmark = [&](const std::string& v) {
    if (v == "unknown") return Benchmark::Unknown;
    if (v == "positive_corr") return Benchmark::PositiveCorr;
    if (v == "negative_corr") return Benchmark::NegativeCorr;
    throw ConfigError("benchmark: unknown value '" + v + "'");
  };

  if (cfg.application.empty()) {
    const std::string& uf = require("utility.family");
    if (uf == "quadratic") {
      cfg.scenario.utility = UtilityModel::quadratic(parse_double("utility.beta", require("utility.beta")));
    } else if (uf == "linear_unit_demand") {
      cfg.scenario.utility = UtilityModel::unit_demand();
    } else {
      throw ConfigError("utility.family: unknown value '" + uf + "'");
    }
    cfg.scenario.cost = parse_double("cost", require("cost"));
    cfg.scenario.cap = parse_double("cap", require("cap"));
    const std::string& sign = require("sign");
    if (sign == "positive") {
      cfg.scenario.sign = ExternalitySign::Positive;
    } else if (sign == "negative") {
      cfg.scenario.sign = ExternalitySign::Negative;
    } else {
      throw ConfigError("sign: unknown value '" + sign + "'");
    }
    cfg.scenario.benchmark = parse_benchmark(require("benchmark"));
    if (const std::string* xb = find("xi_bar")) {
      cfg.scenario.xi_bar = parse_double("xi_bar", *xb);
    }
  } else if (cfg.application == "vaccines") {
    if (const std::string* uf = find("utility.family")) {
      if (*uf != "linear_unit_demand") {
        throw ConfigError("utility.family: vaccines is a unit-demand application");
      }
    }
    if (const std::string* sign = find("sign")) {
      if (*sign != "positive") {
        throw ConfigError("sign: vaccines assumes a beneficial externality");
      }
    }
    cfg.scenario.utility = UtilityModel::unit_demand();
    cfg.scenario.cost = parse_double("cost", require("cost"));
    cfg.scenario.cap = 1.0;
    cfg.scenario.sign = ExternalitySign::Positive;
    cfg.scenario.benchmark = parse_benchmark(require("benchmark"));
    if (const std::string* xb = find("xi_bar")) {
      cfg.scenario.xi_bar = parse_double("xi_bar", *xb);
    }
  } else if (cfg.application == "abatement") {
    cfg.cost_gamma = parse_double("cost.gamma", require("cost.gamma"));
    // The scenario fields below are not consumed by the abatement solver;
    // they are pinned so the echo in reports is well-formed.
    cfg.scenario.utility = UtilityModel::quadratic(1.0);
    cfg.scenario.cost = 1.0;
    cfg.scenario.cap = 1.0;
    cfg.scenario.sign = ExternalitySign::Positive;
    cfg.scenario.benchmark = Benchmark::Unknown;
  } else {  // screening
    cfg.capacity_q = parse_double("capacity.Q", require("capacity.Q"));
    cfg.scenario.utility = UtilityModel::unit_demand();
    cfg.scenario.cost = 1.0;
    cfg.scenario.cap = 1.0;
    cfg.scenario.sign = ExternalitySign::Positive;
    cfg.scenario.benchmark = Benchmark::Unknown;
  }

  for (const auto& [k, v] : parsed.entries) {
    if (!seen.count(k) && k != "application") {
      throw ConfigError("unknown or unused key '" + k + "'");
    }
  }
  return cfg;
}

std::vector<Violation> validate(const RunConfig& config) {
  std::vector<Violation> out = validate(config.scenario);
  if (config.application == "abatement" &&
      !(std::isfinite(config.cost_gamma) && config.cost_gamma > 0.0)) {
    out.push_back({"cost.gamma", "abatement curvature must be positive and finite"});
  }
  if (config.application == "screening" &&
      !(config.capacity_q > 0.0 && config.capacity_q < 1.0)) {
    out.push_back({"capacity.Q", "capacity must lie in (0, 1)"});
  }
  return out;
}

}  // namespace pigou
