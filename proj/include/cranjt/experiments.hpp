#pragma once

#include <string>
#include <vector>

#include "cranjt/config.hpp"

namespace cranjt {

struct RunResult {
    int exit_code = 0;  ///< 0 ok, 1 config, 2 numeric, 3 validation failure
    std::vector<std::string> outputs;
    std::string summary;
};

/// Dispatches an experiment: writes the CSV outputs and the run manifest into
/// spec.output_dir. CSV bytes depend only on (config, master_seed), never on
/// the worker count.
RunResult run_experiment(const ExperimentSpec& spec);

/// dB grid helpers shared by experiments and tests.
std::vector<double> theta_db_grid(double db_min, double db_max, double db_step);
double db_to_linear(double db);

}  // namespace cranjt
