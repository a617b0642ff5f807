#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coalhaus/stats.hpp"

namespace coalhaus::scenarios {

/** Result of one named verification scenario: per-test verdicts plus
 *  human-readable context lines for the run log. */
struct Outcome {
    std::string name;
    int criterion = 0; // 1-based position in names()
    bool pass = false; // conjunction of reports[].pass, false when empty
    std::vector<TestReport> reports;
    std::vector<std::string> detail;
};

/** Canonical scenario names, in criterion order. */
const std::vector<std::string>& names();

int criterion_count();

/** Criterion number for a canonical name or a known alias; 0 when unknown. */
int criterion_of(const std::string& name);

/** Seed a scenario runs with when none is given on the command line. */
std::uint64_t default_seed(int criterion);

Outcome run_criterion(int criterion, std::uint64_t seed, int threads);
Outcome run_criterion(int criterion, int threads);

Outcome run_scenario(const std::string& name, std::uint64_t seed, int threads);
Outcome run_scenario(const std::string& name, int threads);

} // namespace coalhaus::scenarios
