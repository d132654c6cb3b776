#pragma once

#include <string>
#include <vector>

namespace majed {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    double measured = 0.0;   ///< worst deviation observed
    double tolerance = 0.0;
    std::string detail;
};

/// Small-lattice oracle and symmetry checks; cheap enough to run on every install.
std::vector<CheckOutcome> run_selfcheck();

}  // namespace majed
