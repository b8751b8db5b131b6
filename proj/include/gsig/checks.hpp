#pragma once

#include <string>
#include <vector>

namespace gsig {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CriterionResult {
    std::string name;
    bool pass = true;
    std::vector<CheckResult> checks;
};

// The verification suite. The quick level covers every golden value that runs
// in seconds; full adds the p = 23 index, the 25-element elementary-abelian
// structure and the p = 5 report.
std::vector<CriterionResult> run_verification(bool full);

}  // namespace gsig
