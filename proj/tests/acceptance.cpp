// Full verification suite as a standalone binary: one line per criterion,
// nonzero exit when anything fails.

#include <chrono>
#include <cstdio>

#include "gsig/checks.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    bool ok = true;
    int idx = 0;
    auto t0 = clock::now();
    for (const gsig::CriterionResult& cr : gsig::run_verification(/*full=*/true)) {
        ++idx;
        std::printf("%s  criterion %d: %s\n", cr.pass ? "PASS" : "FAIL", idx, cr.name.c_str());
        for (const gsig::CheckResult& c : cr.checks) {
            if (!c.pass) std::printf("      failed: %s  [%s]\n", c.name.c_str(), c.detail.c_str());
        }
        ok &= cr.pass;
    }
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(clock::now() - t0).count();
    std::printf("%s (%d criteria, %llds)\n", ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", idx,
                static_cast<long long>(secs));
    return ok ? 0 : 1;
}
