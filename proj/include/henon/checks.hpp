#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace henon::checks {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;      // assertions only
    double seconds = 0;
    double budget = 0;      // runtime limit in seconds
    nlohmann::ordered_json detail;
    std::string error;
    bool within_budget() const { return seconds < budget; }
};

// numbered property checks 1..10
CheckResult run_check(int id, uint64_t seed = 1);
int check_count();

// suite name -> check ids: core, locus, holonomy, manifolds, rigidity, all
std::vector<int> suite_checks(const std::string& suite);
std::vector<std::string> suite_names();

}  // namespace henon::checks
