#pragma once

#include <string>
#include <vector>

namespace lowfroude::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs every criterion whose name contains `filter` (all when empty).
std::vector<CriterionResult> run(const std::string& filter = "");

/// Prints one PASS/FAIL line per criterion; returns a process exit code
/// (0 iff everything that ran passed).
int report(const std::vector<CriterionResult>& results);

} // namespace lowfroude::acceptance
