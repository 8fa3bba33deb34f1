#pragma once

#include <string>
#include <vector>

namespace ihodual {

struct SelfTestCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;      // measured error
    double tolerance = 0.0;  // after scaling
    double seconds = 0.0;
    std::string detail;      // exception text when the check threw
};

struct SelfTestReport {
    std::vector<SelfTestCheck> checks;
    bool all_passed() const;
};

// Factor from IHODUAL_TOL_SCALE (default 1); every tolerance is multiplied by it.
double tolerance_scale_from_env();

SelfTestReport run_selftest(double tol_scale = tolerance_scale_from_env());

}  // namespace ihodual
