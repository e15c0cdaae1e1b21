#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pshardy/analytic.hpp"
#include "pshardy/exhaustion.hpp"

namespace pshardy {

// Parsed experiment configuration. Top-level lines are "key = value";
// the sections [exhaustion], [exhaustion2] and [function] hold records in
// the same plain-text shape that to_record() emits.
struct ExperimentConfig {
  std::string experiment;
  double p = 2.0;
  double tol = 0.0;  // 0 means use the experiment's default
  std::string format = "csv";
  std::string out;
  std::string phi = "one";
  std::vector<double> r_seq;
  std::vector<double> t_seq;
  std::vector<int> j_seq;
  std::vector<int> K_seq;
  int grid_n = 512;
  double pole_ratio = 0.25;
  double weight_ratio = 0.5;
  std::optional<Exhaustion> u;
  std::optional<Exhaustion> v;
  std::optional<AnalyticFunction> f;
};

const std::vector<std::string>& experiment_names();

// throws std::runtime_error with a line-numbered message on malformed input
ExperimentConfig parse_config(const std::string& text);

// semantic validation; returns all violations, empty when runnable
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

}  // namespace pshardy
