#pragma once

/**
 * @file report.hpp
 * @brief Structured pass/fail output shared by all verification suites.
 *
 * Failures are carried in the report, never thrown: every failing check
 * records a witness sufficient to replay it from the seed.
 */

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace dqcalc {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;   // worst residual observed, 0 for exact checks
    std::string witness;     // inputs + both values on failure, may be empty
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;  // documented deviations, caveats

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    int failure_count() const {
        int n = 0;
        for (const auto& c : checks)
            if (!c.passed) ++n;
        return n;
    }

    void add(std::string name, bool passed, double residual = 0.0, std::string witness = {}) {
        checks.push_back({std::move(name), passed, residual, std::move(witness)});
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["suite"] = suite;
        j["seed"] = seed;
        j["trials"] = trials;
        j["passed"] = all_passed();
        j["failures"] = failure_count();
        j["notes"] = notes;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json cj;
            cj["name"] = c.name;
            cj["passed"] = c.passed;
            cj["residual"] = c.residual;
            if (!c.witness.empty()) cj["witness"] = c.witness;
            j["checks"].push_back(cj);
        }
        return j;
    }
};

}  // namespace dqcalc
