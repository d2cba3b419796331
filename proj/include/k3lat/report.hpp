#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace k3lat {

/// One named expected/actual comparison inside a Report.
struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

/// Structured result of a CLI command or verification step. Any failed check
/// makes the owning process exit nonzero.
struct Report {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json outputs = nlohmann::json::object();
    std::vector<Check> checks;

    void check(std::string name, std::string expected, std::string actual) {
        bool pass = expected == actual;
        checks.push_back(Check{std::move(name), std::move(expected), std::move(actual), pass});
    }

    void check_true(std::string name, bool ok) {
        checks.push_back(Check{std::move(name), "true", ok ? "true" : "false", ok});
    }

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        j["pass"] = all_passed();
        return j;
    }
};

}  // namespace k3lat
