// Check results shared by the axiom verifiers and the suite runner.

#pragma once

#include <string>
#include <vector>

namespace qcartan {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string lhs;      // printed left side, when meaningful
    std::string rhs;      // printed right side, when meaningful
    std::string witness;  // what failed, when it failed
    double elapsed_ms = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    int failures() const {
        int n = 0;
        for (const auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }
};

}  // namespace qcartan
