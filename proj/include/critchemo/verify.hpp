// verify.hpp -- the identity/consistency suite behind `critchemo verify`
// and the acceptance harness.
#ifndef CRITCHEMO_VERIFY_HPP
#define CRITCHEMO_VERIFY_HPP

#include <string>
#include <vector>

#include "critchemo/config.hpp"

namespace critchemo {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;  // measured quantity (residual, ratio, ...)
    double bound = 0.0;  // what it was compared against
};

/// Curve algebra, stationary identities, cross-solver agreement, sharp
/// constant, thresholds, and scaling invariance on the configured grid.
/// Pure computation; throws only on solver failure.
std::vector<CheckResult> run_identity_suite(const Config& cfg);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace critchemo

#endif
