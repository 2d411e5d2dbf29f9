#pragma once

#include <string>
#include <vector>

namespace cranjt {

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double bound = 0.0;
    std::string detail;
};

/// Quick oracle checks over the numeric core (closed-form inversions, moment
/// gates, pmf normalizations, determinism). Minutes-scale; the full
/// acceptance suite lives in the test tree.
std::vector<ValidationCheck> run_validation_suite();

}  // namespace cranjt
