#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cranjt/gamma_moments.hpp"
#include "cranjt/params.hpp"

namespace cranjt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully-resolved experiment description. Serializes to the run manifest and
/// parses back to an identical spec.
struct ExperimentSpec {
    std::string kind = "coverage_curve";  // coverage_curve | interference_ratio_map | se_map | validation_suite
    std::string output_dir = "out";

    NetworkParams params;

    std::vector<int> antennas_values;        // coverage_curve sweep; empty = {params.antennas}
    std::vector<double> lambda_r_values;     // map sweeps; empty = {params.lambda_r}
    std::vector<double> lambda_u_values;
    double theta_db_min = -10.0;
    double theta_db_max = 20.0;
    double theta_db_step = 1.0;

    long n_realizations = 10000;
    std::uint64_t master_seed = 1;
    int workers = 0;
    double window_radius = 0.0;  // 0 = default r1 + 4/sqrt(pi*lambda_u)

    TruncationPolicy policy;

    std::string z_moment_mode = "empirical";  // empirical | printed
    bool match_mc_window = true;              // truncate the outer-interference integral at the MC window

    bool operator==(const ExperimentSpec&) const = default;
};

/// Strict INI-style parser: known sections and keys only; unknown keys are
/// rejected naming the key and line. The [run] section is output-only
/// metadata and is ignored on parse.
ExperimentSpec parse_config_text(const std::string& text, const std::string& origin);
ExperimentSpec parse_config(const std::string& path);

/// Canonical key=value serialization of every field (the manifest body).
std::string to_manifest(const ExperimentSpec& spec);

ZMomentMode z_mode_from_string(const std::string& name);

}  // namespace cranjt
