#pragma once

#include <string>

#include <json.hpp>

#include "tailidx/distributions.hpp"
#include "tailidx/sim_harness.hpp"

namespace tailidx {

// Scenario documents are JSON objects:
//
//   {
//     "name": "t2_by_t033_eps15",
//     "n": 500,                                    (required)
//     "replications": 100,
//     "k_grid": [20, 40, 60],
//     "alpha_set": [0, 0.3, 0.5, 1],
//     "estimators": ["Hill", "MB", "MDPDE_ER", "MDPDE_KL"],
//     "base_seed": 20240601,
//     "epsilon": 0.15,
//     "base": {"family": "student_t", "nu": 2},    (required)
//     "contaminant": {"family": "student_t", "nu": 0.3333333333333333}
//   }
//
// Omitted optional fields take the Scenario defaults; unknown keys are rejected.
// A document with a top-level "scenario" object (as written by `simulate --format json`)
// is accepted too. All errors are ConfigError with the dotted field path.

nlohmann::json to_json(const DistributionSpec& d);
DistributionSpec distribution_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

/// Parses text; syntax errors become ConfigError with an empty field.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace tailidx
