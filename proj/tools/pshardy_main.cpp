#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "pshardy/experiments.hpp"
#include "pshardy/table.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pshardy: level-set measures and weighted Hardy norms on the unit "
      "disk"};
  app.footer(pshardy::experiment_help() +
             "\nuse 'pshardy validate --config FILE' to check a config "
             "without running it\n");

  std::string command, config_path, out_path, format;
  double tol = 0.0;
  app.add_option("command", command,
                 "experiment name, or 'validate' to only check the config")
      ->required();
  app.add_option("--config", config_path, "path to the config file")
      ->required();
  app.add_option("--out", out_path,
                 "output path (overrides the config; default stdout)");
  app.add_option("--format", format, "csv or json (overrides the config)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", tol, "tolerance override")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  pshardy::ExperimentConfig cfg;
  try {
    cfg = pshardy::parse_config(read_file(config_path));
  } catch (const std::exception& e) {
    std::cerr << "pshardy: config error: " << e.what() << "\n";
    return 1;
  }

  const bool validate_only = command == "validate";
  if (!validate_only) {
    if (!cfg.experiment.empty() && cfg.experiment != command) {
      std::cerr << "pshardy: config names experiment '" << cfg.experiment
                << "' but the command line says '" << command << "'\n";
      return 1;
    }
    cfg.experiment = command;
  }
  if (!out_path.empty()) cfg.out = out_path;
  if (!format.empty()) cfg.format = format;
  if (tol > 0.0) cfg.tol = tol;

  const auto issues = pshardy::validate_config(cfg);
  if (validate_only) {
    if (issues.empty()) {
      std::cout << "pshardy: config ok (experiment '" << cfg.experiment
                << "')\n";
      return 0;
    }
    for (const std::string& msg : issues)
      std::cerr << "pshardy: invalid config: " << msg << "\n";
    return 1;
  }
  if (!issues.empty()) {
    for (const std::string& msg : issues)
      std::cerr << "pshardy: invalid config: " << msg << "\n";
    return 1;
  }

  pshardy::ConvergenceTable table;
  try {
    table = pshardy::run_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "pshardy: " << e.what() << "\n";
    return 1;
  }

  const std::string payload =
      cfg.format == "json" ? table.to_json() : table.to_csv();
  try {
    if (cfg.out.empty()) {
      std::cout << payload;
    } else {
      pshardy::write_atomic(cfg.out, payload);
    }
  } catch (const std::exception& e) {
    std::cerr << "pshardy: " << e.what() << "\n";
    return 1;
  }

  bool invariants_ok = true;
  for (const auto& [key, val] : table.summary)
    if (val == "fail") invariants_ok = false;
  const bool budget_ok = table.all_converged();

  std::ostream& log = cfg.out.empty() ? std::cerr : std::cout;
  log << "pshardy: " << cfg.experiment << " "
      << (invariants_ok ? "pass" : "fail") << " (" << table.rows.size()
      << " rows" << (budget_ok ? "" : ", budget exhausted on some rows")
      << ")\n";
  return budget_ok ? 0 : 2;
}
