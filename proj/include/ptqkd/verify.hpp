#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ptqkd {

struct CheckResult {
    std::string name;
    bool pass;
    double max_err; // worst deviation seen (or the witnessed gap, for inequality checks)
    int samples;
};

// The algebraic identity suite: randomized checks of every structural claim
// the strategies rely on. Each check targets 1e-10 or better.
std::vector<CheckResult> run_verification(std::uint64_t seed = 2024, int samples = 1000);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace ptqkd
