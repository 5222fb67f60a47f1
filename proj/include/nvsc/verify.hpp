#pragma once

#include <string>
#include <vector>

/* The full verification suite: every reproduced identity as one check with a
 * pinned cutoff and tolerance, runnable from the CLI and from the acceptance
 * test binary. */

namespace nvsc::verify {

struct CheckResult {
    std::string id;
    std::string claim;
    bool pass = false;
    std::string detail; // failure explanation, empty when passing
    double seconds = 0;
};

std::vector<CheckResult> run_all();

} // namespace nvsc::verify
