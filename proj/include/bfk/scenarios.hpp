#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bfk/io.hpp"

namespace bfk {

/// Zero means "use the scenario default".
struct ScenarioParams {
    int p = 0;
    int max_order = 0;
    std::uint64_t seed = 0;
};

struct ScenarioResult {
    bool passed = true;
    std::vector<std::string> lines; // human-readable, one assertion or table row each
    Json details = Json::object();

    void check(bool ok, const std::string& line);
    void note(const std::string& line) { lines.push_back("     " + line); }
};

struct Scenario {
    std::string id;
    std::string statement;
    ScenarioParams defaults;
    std::function<ScenarioResult(const ScenarioParams&)> run;
};

const std::vector<Scenario>& scenarios();
/// Also accepts the short alias "mur" for "mur-kill".
const Scenario* find_scenario(std::string_view id);
/// Runs with the non-zero fields of params overriding the defaults.
ScenarioResult run_scenario(const Scenario& s, const ScenarioParams& params);
Json report_json(const Scenario& s, const ScenarioParams& params, const ScenarioResult& r);

std::vector<GroupPtr> catalog_universe(int p, int max_order);

} // namespace bfk
