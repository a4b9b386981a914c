#include "pigou/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pigou/applications.hpp"
#include "pigou/format.hpp"
#include "pigou/oracle.hpp"
#include "pigou/version.hpp"

namespace pigou {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// Round through the 12-significant-digit text form so JSON numbers carry no
// more precision than the CSVs do.
double j12(double x) { return std::stod(fmt12(x)); }

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  RunConfig cfg;
  std::string text;
};

int load_config(const std::string& path, std::ostream& err, Loaded& out) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read config file '" << path << "'\n";
    return kExitUsage;
  }
  try {
    out.cfg = build_run_config(parse_config_text(*text));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
  out.text = *text;
  return kExitOk;
}

int reject_invalid(const RunConfig& cfg, std::ostream& err) {
  const auto violations = validate(cfg);
  if (violations.empty()) return kExitOk;
  err << "invalid scenario:\n";
  for (const auto& v : violations) err << "  " << v.field << ": " << v.message << '\n';
  return kExitInvalid;
}

fs::path make_run_dir(const std::string& out_root, const std::string& hash) {
  fs::path dir = fs::path(out_root) / hash;
  fs::create_directories(dir);
  return dir;
}

ordered_json scenario_echo(const RunConfig& cfg) {
  const Scenario& s = cfg.scenario;
  ordered_json j;
  j["utility"]["family"] = to_string(s.utility.family);
  if (s.utility.family == UtilityFamily::Quadratic) {
    j["utility"]["beta"] = j12(s.utility.beta);
  }
  j["types"]["family"] = cfg.types_family;
  j["types"]["range"] = {j12(cfg.types_lo), j12(cfg.types_hi)};
  j["types"]["n"] = cfg.types_n;
  j["cost"] = j12(s.cost);
  j["mu"] = j12(s.mu);
  j["cap"] = j12(s.cap);
  j["sign"] = to_string(s.sign);
  j["benchmark"] = to_string(s.benchmark);
  j["xi_bar"] = s.xi_bar ? ordered_json(j12(*s.xi_bar)) : ordered_json(nullptr);
  j["application"] = cfg.application;
  if (cfg.application == "abatement") j["cost.gamma"] = j12(cfg.cost_gamma);
  if (cfg.application == "screening") j["capacity.Q"] = j12(cfg.capacity_q);
  return j;
}

ordered_json policy_json(const Policy& p) {
  ordered_json j;
  j["kind"] = to_string(p.kind);
  j["parameter"] = j12(p.parameter);
  j["guarantee"] = j12(p.guarantee);
  j["foc_residual"] = j12(p.foc_residual);
  j["iterations"] = p.iterations;
  j["note"] = p.note;
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Mechanism rows for the policy, per application. Standard scenarios and
// vaccines use envelope transfers; abatement firms pay nothing and bear
// C(floor, theta); screening charges no waiting cost under the lottery.
Mechanism mechanism_for(const RunConfig& cfg, const Policy& policy, double u0) {
  const Scenario& s = cfg.scenario;
  if (cfg.application == "abatement") {
    const Eigen::Index n = s.types.size();
    CostModel cost{cfg.cost_gamma};
    Array t = Array::Zero(n), U(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      U[i] = -cost.cost(policy.parameter, s.types.grid()[i]);
    }
    return {policy.schedule, std::move(t), std::move(U), 0.0};
  }
  if (cfg.application == "screening") {
    const Eigen::Index n = s.types.size();
    Array t = Array::Zero(n), U(n);
    for (Eigen::Index i = 0; i < n; ++i) U[i] = s.types.grid()[i] * policy.parameter;
    const double bottom_rent = U[0];  // read before U is moved out
    return {policy.schedule, std::move(t), std::move(U), bottom_rent};
  }
  return transfers_from_allocation(policy.schedule, s, u0);
}

ConditionalMean nature_for(const RunConfig& cfg, const Policy& policy) {
  if (cfg.application == "abatement" || cfg.application == "screening") {
    // The worst case is already attained by a flat profile here; report it.
    ConditionalMean m;
    m.monotone_class = MeanClass::Any;
    m.values = Array::Constant(cfg.scenario.types.size(), cfg.scenario.mu);
    return m;
  }
  return nature_best_response(policy.schedule, cfg.scenario);
}

Policy solve_for(const RunConfig& cfg) {
  const Scenario& s = cfg.scenario;
  if (cfg.application == "vaccines") return robust_vaccine_policy(s);
  if (cfg.application == "abatement") {
    return solve_abatement_floor(CostModel{cfg.cost_gamma}, s.types, s.mu);
  }
  if (cfg.application == "screening") {
    const ScreeningMechanism mech = lottery(cfg.capacity_q, s.types);
    Policy p;
    p.kind = PolicyKind::Lottery;
    p.parameter = cfg.capacity_q;
    p.schedule = AllocationSchedule(mech.q);
    p.guarantee = screening_worst_case(mech, s.mu, s.types);
    return p;
  }
  return solve(s);
}

long wall_ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int run_solve(const std::string& config_path, const std::string& out_root, double u0,
              std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Loaded loaded;
  if (int rc = load_config(config_path, err, loaded)) return rc;
  if (int rc = reject_invalid(loaded.cfg, err)) return rc;

  Policy policy;
  try {
    policy = solve_for(loaded.cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  const std::string hash = fnv1a_hex(loaded.text + "|solve|u0=" + fmt12(u0));
  const fs::path dir = make_run_dir(out_root, hash);

  {
    std::ostringstream csv;
    write_mechanism_csv(csv, mechanism_for(loaded.cfg, policy, u0), loaded.cfg.scenario);
    write_text(dir / "schedule.csv", csv.str());
  }
  {
    std::ostringstream csv;
    write_conditional_mean_csv(csv, nature_for(loaded.cfg, policy), loaded.cfg.scenario);
    write_text(dir / "nature.csv", csv.str());
  }

  ordered_json report;
  report["version"] = kVersion;
  report["command"] = "solve";
  report["config_hash"] = hash;
  report["scenario"] = scenario_echo(loaded.cfg);
  report["policy"] = policy_json(policy);
  report["files"]["schedule_csv"] = "schedule.csv";
  report["files"]["nature_csv"] = "nature.csv";
  report["oracle"] = nullptr;
  write_text(dir / "report.json", report.dump(2) + "\n");

  out << "policy=" << to_string(policy.kind) << " parameter=" << fmt12(policy.parameter)
      << " guarantee=" << fmt12(policy.guarantee) << " out=" << dir.string()
      << " wall_ms=" << wall_ms_since(t0) << '\n';
  return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& out_root,
              const std::string& param, double lo, double hi, int steps, double u0,
              std::ostream& out, std::ostream& err) {
  (void)u0;
  const auto t0 = std::chrono::steady_clock::now();
  if (param != "mu" && param != "cost" && param != "xi_bar") {
    err << "usage error: --param must be mu, cost, or xi_bar\n";
    return kExitUsage;
  }
  if (steps < 2) {
    err << "usage error: --range needs at least 2 steps\n";
    return kExitUsage;
  }
  Loaded loaded;
  if (int rc = load_config(config_path, err, loaded)) return rc;

  struct Row {
    double value = 0.0;
    bool valid = false;
    Policy policy;
    std::string reason;
  };
  std::vector<Row> rows(steps);

  for (int k = 0; k < steps; ++k) {
    Row& row = rows[k];
    row.value = lo + (hi - lo) * k / (steps - 1);
    RunConfig cfg = loaded.cfg;
    if (param == "mu") {
      cfg.scenario.mu = row.value;
    } else if (param == "cost") {
      cfg.scenario.cost = row.value;
    } else {
      cfg.scenario.xi_bar = row.value;
    }
    const auto violations = validate(cfg);
    if (!violations.empty()) {
      row.reason = violations.front().field + ": " + violations.front().message;
      continue;
    }
    try {
      row.policy = solve_for(cfg);
      row.valid = true;
    } catch (const Error& e) {
      row.reason = e.what();
    }
  }

  // Sanity column: for beneficial effects the guarantee is nondecreasing in
  // mu (more external value to harvest); meaningless for other params.
  const bool monotone_applies =
      param == "mu" && loaded.cfg.scenario.sign == ExternalitySign::Positive;

  std::ostringstream csv;
  csv << "param,value,kind,parameter,guarantee,guarantee_nondecreasing,status\n";
  const Row* prev_valid = nullptr;
  int invalid = 0;
  for (const Row& row : rows) {
    csv << param << ',' << fmt12(row.value) << ',';
    if (!row.valid) {
      ++invalid;
      csv << ",,,,invalid\n";
      continue;
    }
    csv << to_string(row.policy.kind) << ',' << fmt12(row.policy.parameter) << ','
        << fmt12(row.policy.guarantee) << ',';
    if (monotone_applies) {
      const bool ok =
          !prev_valid || row.policy.guarantee >= prev_valid->policy.guarantee - 1e-9;
      csv << (ok ? 1 : 0);
    }
    csv << ",ok\n";
    prev_valid = &row;
  }

  std::ostringstream flags;
  flags << "|sweep|param=" << param << "|lo=" << fmt12(lo) << "|hi=" << fmt12(hi)
        << "|steps=" << steps;
  const std::string hash = fnv1a_hex(loaded.text + flags.str());
  const fs::path dir = make_run_dir(out_root, hash);
  write_text(dir / "sweep.csv", csv.str());

  out << "sweep param=" << param << " rows=" << steps << " invalid=" << invalid
      << " out=" << (dir / "sweep.csv").string() << " wall_ms=" << wall_ms_since(t0) << '\n';
  return invalid > 0 ? kExitSweepBad : kExitOk;
}

int run_oracle_check(const std::string& config_path, const std::string& out_root,
                     int n_types, int n_levels, double corrupt, std::ostream& out,
                     std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Loaded loaded;
  if (int rc = load_config(config_path, err, loaded)) return rc;
  if (loaded.cfg.application == "abatement" || loaded.cfg.application == "screening") {
    err << "error: the oracle verifies allocation scenarios, not the " << loaded.cfg.application
        << " application\n";
    return kExitInvalid;
  }
  if (loaded.cfg.scenario.xi_bar) {
    err << "error: the oracle has no enumerated counterpart for support-bounded scenarios; "
           "drop xi_bar\n";
    return kExitInvalid;
  }

  // Re-discretize the same type family at the oracle's resolution.
  RunConfig reduced = loaded.cfg;
  reduced.types_n = n_types;
  reduced.scenario.types =
      TypeDistribution::uniform(reduced.types_lo, reduced.types_hi, n_types);
  if (int rc = reject_invalid(reduced, err)) return rc;

  Quantization qz{n_types, n_levels};
  Policy policy;
  MinimaxResult minimax;
  try {
    require_enumerable(qz);
    policy = solve_for(reduced);
    if (corrupt != 0.0) {
      policy.parameter += corrupt;
      policy.schedule = induced_schedule(policy.kind, policy.parameter, reduced.scenario);
      policy.guarantee = worst_case_welfare(policy.schedule, reduced.scenario);
      policy.note = "corrupted by " + fmt12(corrupt) + " for the negative control";
    }
    minimax = minimax_bruteforce(reduced.scenario, qz);
  } catch (const Error& e) {
    if (e.code() == Errc::TooLarge) {
      err << "error: " << e.what() << '\n';
      return kExitTooLarge;
    }
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  const double diff = std::abs(policy.guarantee - minimax.value);
  const bool pass = diff <= minimax.gap + 1e-9;

  std::ostringstream flags;
  flags << "|oracle|types=" << n_types << "|levels=" << n_levels
        << "|corrupt=" << fmt12(corrupt);
  const std::string hash = fnv1a_hex(loaded.text + flags.str());
  const fs::path dir = make_run_dir(out_root, hash);

  {
    std::ostringstream csv;
    write_mechanism_csv(csv, mechanism_for(reduced, policy, 0.0), reduced.scenario);
    write_text(dir / "schedule.csv", csv.str());
  }
  {
    std::ostringstream csv;
    write_conditional_mean_csv(csv, nature_for(reduced, policy), reduced.scenario);
    write_text(dir / "nature.csv", csv.str());
  }

  ordered_json report;
  report["version"] = kVersion;
  report["command"] = "oracle";
  report["config_hash"] = hash;
  report["scenario"] = scenario_echo(reduced);
  report["policy"] = policy_json(policy);
  report["files"]["schedule_csv"] = "schedule.csv";
  report["files"]["nature_csv"] = "nature.csv";
  ordered_json oracle;
  oracle["n_types"] = n_types;
  oracle["n_levels"] = n_levels;
  oracle["bruteforce_value"] = j12(minimax.value);
  oracle["solver_value"] = j12(policy.guarantee);
  oracle["gap_bound"] = j12(minimax.gap);
  oracle["schedules_examined"] = minimax.count;
  ordered_json best = ordered_json::array();
  for (Eigen::Index i = 0; i < minimax.schedule.size(); ++i) best.push_back(j12(minimax.schedule[i]));
  oracle["bruteforce_schedule"] = best;
  oracle["pass"] = pass;
  report["oracle"] = oracle;
  write_text(dir / "report.json", report.dump(2) + "\n");

  out << "oracle=" << (pass ? "pass" : "fail") << " solver=" << fmt12(policy.guarantee)
      << " bruteforce=" << fmt12(minimax.value) << " gap=" << fmt12(minimax.gap)
      << " schedules=" << minimax.count << " out=" << dir.string()
      << " wall_ms=" << wall_ms_since(t0) << '\n';
  return pass ? kExitOk : kExitOracleFail;
}

int run_eval(const std::string& config_path, const std::string& schedule_csv_path,
             std::ostream& out, std::ostream& err) {
  Loaded loaded;
  if (int rc = load_config(config_path, err, loaded)) return rc;
  if (!loaded.cfg.application.empty() && loaded.cfg.application != "vaccines") {
    err << "error: eval needs an allocation scenario, not the " << loaded.cfg.application
        << " application\n";
    return kExitInvalid;
  }
  if (int rc = reject_invalid(loaded.cfg, err)) return rc;

  const auto csv = read_file(schedule_csv_path);
  if (!csv) {
    err << "error: cannot read schedule CSV '" << schedule_csv_path << "'\n";
    return kExitUsage;
  }
  try {
    std::istringstream in(*csv);
    const Array values = read_schedule_csv(in);
    const AllocationSchedule schedule = make_schedule(values, loaded.cfg.scenario);
    out << "worst_case_welfare=" << fmt12(worst_case_welfare(schedule, loaded.cfg.scenario))
        << '\n';
  } catch (const Error& e) {
    err << "invalid schedule: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace pigou
