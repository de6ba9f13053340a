#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "windest/harness.hpp"

namespace windest {

/// Scenario from JSON. Relative file references resolve against base_dir.
///
///   {
///     "wind_profile": [{"t_start": 0, "u": 5}, ...],
///     "duration": 450, "dt": 0.01,
///     "turbine": "case_study" | "nrel5mw" | "<params file>" | {<TurbineSpec fields>},
///     "curve_file": "<lambda,cp csv>",            optional, synthetic table otherwise
///     "controller_gain": 1.0,                      optional
///     "estimator": {"family": "PI", "gamma": 40, "beta": 10, "delay": 0.3},
///     "initial": {"omega_r": 0.8, "u_guess": 8},   optional fields
///     "k1": 0.016, "k2": 0.095                     optional
///   }
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

/// Inverse of scenario_from_json with the turbine written inline and the
/// curve omitted when it is the synthetic table.
nlohmann::json scenario_to_json(const Scenario& scn);

}  // namespace windest
