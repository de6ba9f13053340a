#include "windest/scenario_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace windest {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw std::invalid_argument(where + ": missing '" + key + "'");
  if (!j.at(key).is_number()) throw std::invalid_argument(where + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  std::filesystem::path p(file);
  return p.is_absolute() ? p : base / p;
}

TurbineParams turbine_from_json(const json& t, const std::filesystem::path& base) {
  if (t.is_string()) {
    const auto name = t.get<std::string>();
    if (name == "case_study") return case_study_params();
    if (name == "nrel5mw") return nrel5mw_params();
    return load_turbine_params(resolve(base, name));
  }
  if (!t.is_object()) throw std::invalid_argument("turbine: expected a name, a file or an object");
  reject_unknown(t, {"rho", "rotor_radius", "gear_ratio", "inertia_generator", "inertia_rotor", "omega_r_min"},
                 "turbine");
  TurbineSpec spec;
  spec.rho = number(t, "rho", "turbine");
  spec.rotor_radius = number(t, "rotor_radius", "turbine");
  spec.gear_ratio = number(t, "gear_ratio", "turbine");
  spec.inertia_generator = number(t, "inertia_generator", "turbine");
  spec.inertia_rotor = number(t, "inertia_rotor", "turbine");
  if (t.contains("omega_r_min")) spec.omega_r_min = number(t, "omega_r_min", "turbine");
  return TurbineParams(spec);
}

}  // namespace

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("scenario: expected a JSON object");
  reject_unknown(j,
                 {"wind_profile", "duration", "dt", "turbine", "curve_file", "controller_gain", "estimator",
                  "initial", "k1", "k2"},
                 "scenario");
  Scenario scn;
  if (!j.contains("wind_profile") || !j.at("wind_profile").is_array()) {
    throw std::invalid_argument("scenario: 'wind_profile' must be an array");
  }
  for (const auto& seg : j.at("wind_profile")) {
    reject_unknown(seg, {"t_start", "u"}, "wind_profile");
    scn.wind_profile.push_back({number(seg, "t_start", "wind_profile"), number(seg, "u", "wind_profile")});
  }
  scn.duration = number(j, "duration", "scenario");
  if (j.contains("dt")) scn.dt = number(j, "dt", "scenario");

  scn.turbine = std::make_shared<const TurbineParams>(
      turbine_from_json(j.contains("turbine") ? j.at("turbine") : json("case_study"), base_dir));
  if (j.contains("curve_file")) {
    scn.curve = std::make_shared<const CpCurve>(
        load_cp_curve(resolve(base_dir, j.at("curve_file").get<std::string>())));
  } else {
    scn.curve = std::make_shared<const CpCurve>(synthetic_cp_curve());
  }
  if (j.contains("controller_gain")) scn.controller_gain = number(j, "controller_gain", "scenario");

  if (!j.contains("estimator")) throw std::invalid_argument("scenario: missing 'estimator'");
  const auto& e = j.at("estimator");
  reject_unknown(e, {"family", "gamma", "beta", "delay"}, "estimator");
  scn.estimator.family = parse_family(e.value("family", std::string("PI")));
  scn.estimator.gamma = number(e, "gamma", "estimator");
  scn.estimator.beta = e.contains("beta") ? number(e, "beta", "estimator") : 0.0;
  scn.estimator.delay = e.contains("delay") ? number(e, "delay", "estimator") : 0.0;
  scn.estimator.dt = scn.dt;

  if (j.contains("initial")) {
    const auto& i = j.at("initial");
    reject_unknown(i, {"omega_r", "u_guess"}, "initial");
    if (i.contains("omega_r")) scn.initial.omega_r = number(i, "omega_r", "initial");
    if (i.contains("u_guess")) scn.initial.u_guess = number(i, "u_guess", "initial");
  }
  if (j.contains("k1")) scn.k1 = number(j, "k1", "scenario");
  if (j.contains("k2")) scn.k2 = number(j, "k2", "scenario");
  validate(scn);
  return scn;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("scenario " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j, path.parent_path());
}

json scenario_to_json(const Scenario& scn) {
  json j;
  json profile = json::array();
  for (const auto& s : scn.wind_profile) profile.push_back({{"t_start", s.t_start}, {"u", s.u}});
  j["wind_profile"] = profile;
  j["duration"] = scn.duration;
  j["dt"] = scn.dt;
  const auto& t = scn.turbine->spec();
  j["turbine"] = {{"rho", t.rho},
                  {"rotor_radius", t.rotor_radius},
                  {"gear_ratio", t.gear_ratio},
                  {"inertia_generator", t.inertia_generator},
                  {"inertia_rotor", t.inertia_rotor},
                  {"omega_r_min", t.omega_r_min}};
  if (scn.controller_gain) j["controller_gain"] = *scn.controller_gain;
  j["estimator"] = {{"family", std::string(to_string(scn.estimator.family))},
                    {"gamma", scn.estimator.gamma},
                    {"beta", scn.estimator.beta},
                    {"delay", scn.estimator.delay}};
  json init{{"u_guess", scn.initial.u_guess}};
  if (scn.initial.omega_r) init["omega_r"] = *scn.initial.omega_r;
  j["initial"] = init;
  j["k1"] = scn.k1;
  j["k2"] = scn.k2;
  return j;
}

}  // namespace windest
