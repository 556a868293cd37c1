#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tov {

struct PropertyResult {
    std::string name;
    int trials = 0;
    bool passed = false;
    std::string counterexample;  // first failure message, empty on pass
};

struct SuiteReport {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<PropertyResult> results;

    bool all_passed() const;
};

// Runs every library invariant over random instances. Each property draws its
// own stream from (seed, property index), so reports are identical for a
// given (seed, trials) regardless of ordering or platform.
SuiteReport run_property_suite(std::uint64_t seed, int trials);

// Deterministic text rendering, one line per property.
std::string format_report(const SuiteReport& report);

}  // namespace tov
