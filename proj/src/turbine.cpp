#include "windest/turbine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "windest/errors.hpp"
#include "windest/text_io.hpp"

namespace windest {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("turbine parameter ") + name + " must be positive and finite");
  }
}

void check_operating_point(const TurbineParams& params, double omega_r, double u) {
  if (!(omega_r >= params.omega_r_min())) {
    throw EnvelopeError("rotor speed " + text::format_double(omega_r) + " rad/s below omega_r_min " +
                        text::format_double(params.omega_r_min()));
  }
  if (!(u > 0.0)) {
    throw EnvelopeError("wind speed must be positive, got " + text::format_double(u));
  }
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TurbineParams::TurbineParams(const TurbineSpec& spec) : spec_(spec) {
  require_positive(spec.rho, "rho");
  require_positive(spec.rotor_radius, "rotor_radius");
  require_positive(spec.gear_ratio, "gear_ratio");
  require_positive(spec.inertia_generator, "inertia_generator");
  require_positive(spec.inertia_rotor, "inertia_rotor");
  require_positive(spec.omega_r_min, "omega_r_min");
  swept_area_ = std::numbers::pi * spec.rotor_radius * spec.rotor_radius;
  inertia_equivalent_ =
      spec.inertia_generator + spec.inertia_rotor / (spec.gear_ratio * spec.gear_ratio);
  phi_scale_ = spec.rho * swept_area_ / (2.0 * spec.gear_ratio * inertia_equivalent_);
}

TurbineParams nrel5mw_params() {
  return TurbineParams(TurbineSpec{.rho = 1.225,
                                   .rotor_radius = 63.0,
                                   .gear_ratio = 97.0,
                                   .inertia_generator = 534.116,
                                   .inertia_rotor = 3.8759228e7,
                                   .omega_r_min = 0.1});
}

TurbineParams case_study_params() {
  return TurbineParams(TurbineSpec{.rho = 1.225,
                                   .rotor_radius = 63.0,
                                   .gear_ratio = 97.0,
                                   .inertia_generator = 534.116 / 3.2,
                                   .inertia_rotor = 3.8759228e7 / 3.2,
                                   .omega_r_min = 0.1});
}

TurbineParams load_turbine_params(std::istream& in) {
  std::map<std::string, double, std::less<>> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = std::string_view(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = text::trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("parameter file line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(text::trim(body.substr(0, eq)));
    double value = 0.0;
    try {
      value = text::parse_double(body.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("parameter file line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!values.emplace(key, value).second) {
      throw std::invalid_argument("parameter file: duplicate key '" + key + "'");
    }
  }

  static constexpr std::string_view kRequired[] = {"rho", "rotor_radius", "gear_ratio",
                                                    "inertia_generator", "inertia_rotor"};
  for (auto key : kRequired) {
    if (!values.contains(key)) {
      throw std::invalid_argument("parameter file: missing key '" + std::string(key) + "'");
    }
  }
  for (const auto& [key, _] : values) {
    static constexpr std::string_view kKnown[] = {"rho",           "rotor_radius",     "gear_ratio",
                                                  "inertia_generator", "inertia_rotor", "omega_r_min",
                                                  "swept_area",    "inertia_equivalent"};
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw std::invalid_argument("parameter file: unknown key '" + key + "'");
    }
  }

  TurbineSpec spec;
  spec.rho = values.find("rho")->second;
  spec.rotor_radius = values.find("rotor_radius")->second;
  spec.gear_ratio = values.find("gear_ratio")->second;
  spec.inertia_generator = values.find("inertia_generator")->second;
  spec.inertia_rotor = values.find("inertia_rotor")->second;
  if (auto it = values.find("omega_r_min"); it != values.end()) spec.omega_r_min = it->second;
  TurbineParams params(spec);

  if (auto it = values.find("swept_area"); it != values.end() && !close_rel(it->second, params.swept_area(), 1e-12)) {
    throw std::invalid_argument("parameter file: swept_area inconsistent with pi R^2");
  }
  if (auto it = values.find("inertia_equivalent");
      it != values.end() && !close_rel(it->second, params.inertia_equivalent(), 1e-12)) {
    throw std::invalid_argument("parameter file: inertia_equivalent inconsistent with J_g + J_r/N^2");
  }
  return params;
}

TurbineParams load_turbine_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open parameter file " + path.string());
  }
  return load_turbine_params(in);
}

void save_turbine_params(std::ostream& out, const TurbineParams& params) {
  out << "rho=" << text::format_double(params.rho()) << '\n'
      << "rotor_radius=" << text::format_double(params.rotor_radius()) << '\n'
      << "gear_ratio=" << text::format_double(params.gear_ratio()) << '\n'
      << "inertia_generator=" << text::format_double(params.inertia_generator()) << '\n'
      << "inertia_rotor=" << text::format_double(params.inertia_rotor()) << '\n'
      << "omega_r_min=" << text::format_double(params.omega_r_min()) << '\n';
}

double phi(const TurbineParams& params, const CpCurve& curve, double omega_r, double u) {
  check_operating_point(params, omega_r, u);
  const double lambda = omega_r * params.rotor_radius() / u;
  return params.phi_scale() * u * u * u / omega_r * curve.cp(lambda);
}

double phi_prime_u(const TurbineParams& params, const CpCurve& curve, double omega_r, double u) {
  check_operating_point(params, omega_r, u);
  const double lambda = omega_r * params.rotor_radius() / u;
  return params.phi_scale() * params.rotor_radius() * u * curve.kappa(lambda);
}

ClampedPhi phi_clamped(const TurbineParams& params, const CpCurve& curve, double omega_r, double u) {
  if (!(omega_r >= params.omega_r_min())) {
    throw EnvelopeError("rotor speed " + text::format_double(omega_r) + " rad/s below omega_r_min");
  }
  const double span = omega_r * params.rotor_radius();
  double lambda = u > 0.0 ? span / u : curve.lambda_max();
  bool clamped = u <= 0.0;
  if (lambda < curve.lambda_min()) {
    lambda = curve.lambda_min();
    clamped = true;
  } else if (lambda > curve.lambda_max()) {
    lambda = curve.lambda_max();
    clamped = true;
  }
  const double u_eff = clamped ? span / lambda : u;
  return {params.phi_scale() * u_eff * u_eff * u_eff / omega_r * curve.cp(lambda), clamped};
}

double torque_controller(double k_opt, double omega_g) {
  if (!(k_opt > 0.0)) throw std::invalid_argument("torque gain K must be positive");
  if (!(omega_g > 0.0)) throw std::invalid_argument("generator speed must be positive");
  return k_opt * omega_g * omega_g;
}

double optimal_torque_gain(const TurbineParams& params, const CpCurve& curve) {
  const double n = params.gear_ratio();
  const double r = params.rotor_radius();
  const double ls = curve.lambda_star();
  return params.rho() * params.swept_area() * r * r * r * curve.cp_star() / (2.0 * n * n * n * ls * ls * ls);
}

double steady_state_rotor_speed(const TurbineParams& params, const CpCurve& curve, double u) {
  return curve.lambda_star() * u / params.rotor_radius();
}

PlantState step_plant(const TurbineParams& params, const CpCurve& curve, const PlantState& state,
                      double t_g, double u, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("plant step: dt must be positive");
  const double n = params.gear_ratio();
  const double load = t_g / (n * params.inertia_equivalent());
  const auto rate = [&](double w) { return phi(params, curve, w, u) / n - load; };

  const double k1 = rate(state.omega_r);
  const double k2 = rate(state.omega_r + 0.5 * dt * k1);
  const double k3 = rate(state.omega_r + 0.5 * dt * k2);
  const double k4 = rate(state.omega_r + dt * k3);
  const double next = state.omega_r + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!std::isfinite(next) || next < params.omega_r_min()) {
    throw EnvelopeError("plant step left the operating envelope: omega_r=" + text::format_double(next));
  }
  return {next, state.t + dt};
}

}  // namespace windest
