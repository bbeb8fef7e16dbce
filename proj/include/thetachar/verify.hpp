#pragma once

#include <string>
#include <vector>

#include "thetachar/modular.hpp"
#include "thetachar/wreduction.hpp"

namespace thetachar {

/// One verification check: named, timed, and tied to the numbered acceptance
/// criterion it witnesses.
struct CheckResult {
    std::string name;
    int criterion = 0;
    bool passed = false;
    double seconds = 0.0;
    std::string detail; // failure diagnosis, empty on pass
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool passed() const;
};

/// Suite names accepted by run_suite, in reporting order ("all" not listed,
/// but accepted as the aggregate).
const std::vector<std::string>& verify_suites();

/// Runs one suite by name, or every suite for "all"; UnknownSuite otherwise.
SuiteReport run_suite(const std::string& name);

} // namespace thetachar
