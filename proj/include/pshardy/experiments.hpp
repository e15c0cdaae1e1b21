#pragma once

#include <string>

#include "pshardy/config.hpp"
#include "pshardy/table.hpp"

namespace pshardy {

// Runs the configured experiment and returns its table. Invalid or
// inconsistent configurations raise std::domain_error; numerical failures
// raise std::runtime_error. Budget exhaustion does not throw: affected rows
// carry converged = 0.
ConvergenceTable run_experiment(const ExperimentConfig& cfg);

// column semantics per experiment, shown by the command line help
std::string experiment_help();

}  // namespace pshardy
