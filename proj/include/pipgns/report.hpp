#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace pipgns {

/// One verdict in a report: a named check, pass or fail, and a witness when it failed.
struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
    std::string witness;
};

struct Report {
    std::vector<Check> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string detail = {}, std::string witness = {}) {
        checks.push_back({std::move(name), pass, std::move(detail), std::move(witness)});
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    void append(const Report& o, const std::string& prefix = {}) {
        for (auto c : o.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }

    std::string text() const {
        std::string out;
        for (const auto& c : checks) {
            out += (c.pass ? "  PASS  " : "  FAIL  ") + c.name;
            if (!c.detail.empty()) out += ": " + c.detail;
            if (!c.witness.empty()) out += " [witness: " + c.witness + "]";
            out += "\n";
        }
        return out;
    }

    nlohmann::ordered_json json() const {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            nlohmann::ordered_json j;
            j["name"] = c.name;
            j["pass"] = c.pass;
            if (!c.detail.empty()) j["detail"] = c.detail;
            if (!c.witness.empty()) j["witness"] = c.witness;
            arr.push_back(std::move(j));
        }
        return arr;
    }
};

}  // namespace pipgns
