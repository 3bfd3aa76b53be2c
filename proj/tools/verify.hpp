#pragma once

// Reduced-scale cross-validation suites behind `nasearch verify`.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace nasearch::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

const std::vector<std::string>& suite_names();

// Throws UsageError for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite, bool fast);

nlohmann::json report_json(const std::vector<CheckResult>& results);

}  // namespace nasearch::verify
