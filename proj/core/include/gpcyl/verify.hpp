#pragma once

/// Self-checks of the closed forms and discrete identities, bundled for the CLI.

#include <functional>
#include <string>
#include <vector>

namespace gpcyl {

enum class VerifyLevel { fast, full };

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::fast;
    /// Adds the coercivity probes of the hydrodynamic expansion.
    bool stability = false;
    /// Replaces xi wherever the suite consumes it (used to check that a wrong
    /// closed form is caught).
    std::function<double(double)> xi_override;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    double runtime_s = 0.0;

    bool passed() const;
    int exit_code() const { return passed() ? 0 : 1; }
    std::string to_json() const;
};

VerifyReport verify_suite(const VerifyOptions& options = {});

}  // namespace gpcyl
