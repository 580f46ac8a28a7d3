#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levywn/io.hpp"

namespace levywn {

/// Outcome of one named acceptance check.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;            ///< observed values, targets, tolerances
    double seconds = 0.0;
    std::vector<McReportRow> rows; ///< quantitative rows for the MC report CSV
};

/// Names of all acceptance checks, in execution order.
std::vector<std::string> acceptance_check_names();

/// Run one named check with the given base seed.
CheckResult run_acceptance_check(const std::string& name, std::uint64_t seed);

/// Run every check (suite == "all") or one named suite.
std::vector<CheckResult> run_acceptance_suite(const std::string& suite, std::uint64_t seed);

}  // namespace levywn
