#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pigou/cli.hpp"
#include "pigou/version.hpp"

namespace {

std::string resolve_out_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ROBUST_PIGOU_OUT")) return env;
  return "out";
}

// --range lo,hi,steps
bool parse_range(const std::string& text, double& lo, double& hi, int& steps) {
  std::size_t c1 = text.find(',');
  if (c1 == std::string::npos) return false;
  std::size_t c2 = text.find(',', c1 + 1);
  if (c2 == std::string::npos) return false;
  try {
    std::size_t pos = 0;
    lo = std::stod(text.substr(0, c1), &pos);
    if (pos != c1) return false;
    const std::string mid = text.substr(c1 + 1, c2 - c1 - 1);
    hi = std::stod(mid, &pos);
    if (pos != mid.size()) return false;
    const std::string last = text.substr(c2 + 1);
    steps = std::stoi(last, &pos);
    if (pos != last.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"worst-case optimal regulation of externalities"};
  app.set_version_flag("--version", pigou::kVersion);
  app.require_subcommand(1);

  std::string config, out_flag, param, range_text, schedule_csv;
  double u0 = 0.0, corrupt = 0.0;
  int n_types = 6, n_levels = 7;

  CLI::App* solve = app.add_subcommand("solve", "solve one scenario and write its report");
  solve->add_option("--config", config, "scenario config file")->required();
  solve->add_option("--out", out_flag, "output root (default: $ROBUST_PIGOU_OUT or ./out)");
  solve->add_option("--u0", u0, "rent granted to the lowest type (transfer normalization)");

  CLI::App* sweep = app.add_subcommand("sweep", "comparative statics over one parameter");
  sweep->add_option("--config", config, "scenario config file")->required();
  sweep->add_option("--out", out_flag, "output root");
  sweep->add_option("--param", param, "mu | cost | xi_bar")->required();
  sweep->add_option("--range", range_text, "lo,hi,steps")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force check of the solver's guarantee");
  oracle->add_option("--config", config, "scenario config file")->required();
  oracle->add_option("--out", out_flag, "output root");
  oracle->add_option("--types", n_types, "oracle grid size (default 6)");
  oracle->add_option("--levels", n_levels, "quantity levels (default 7)");
  oracle->add_option("--corrupt", corrupt, "negative control: shift the solver's parameter")
      ->group("");  // test hook, hidden from help

  CLI::App* eval = app.add_subcommand("eval", "worst-case welfare of a schedule CSV");
  eval->add_option("--config", config, "scenario config file")->required();
  eval->add_option("--schedule", schedule_csv, "schedule CSV (needs a q column)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pigou::kExitUsage;
  }

  const std::string out_root = resolve_out_root(out_flag);
  if (solve->parsed()) {
    return pigou::run_solve(config, out_root, u0, std::cout, std::cerr);
  }
  if (sweep->parsed()) {
    double lo = 0.0, hi = 0.0;
    int steps = 0;
    if (!parse_range(range_text, lo, hi, steps)) {
      std::cerr << "usage error: --range expects lo,hi,steps\n";
      return pigou::kExitUsage;
    }
    return pigou::run_sweep(config, out_root, param, lo, hi, steps, u0, std::cout, std::cerr);
  }
  if (oracle->parsed()) {
    if (n_types < 1 || n_levels < 2) {
      std::cerr << "usage error: --types needs >= 1, --levels needs >= 2\n";
      return pigou::kExitUsage;
    }
    return pigou::run_oracle_check(config, out_root, n_types, n_levels, corrupt, std::cout,
                                   std::cerr);
  }
  return pigou::run_eval(config, schedule_csv, std::cout, std::cerr);
}
