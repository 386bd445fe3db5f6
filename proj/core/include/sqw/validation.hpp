#pragma once

// Compact oracle suite behind the `validate` scenario.

#include <string>
#include <vector>

namespace sqw {

struct ValidationCheck {
    std::string name;
    double value = 0.0;     ///< measured deviation (or measured quantity)
    double tolerance = 0.0; ///< pass when value <= tolerance
    bool pass = false;
};

/// Runs every check; deterministic for a given thread count.
std::vector<ValidationCheck> run_validation_suite(unsigned threads = 1);

/// "name,value,tolerance,pass" rows.
std::string validation_csv(const std::vector<ValidationCheck>& checks);

} // namespace sqw
