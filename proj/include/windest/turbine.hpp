#pragma once

#include <filesystem>
#include <iosfwd>

#include "windest/cp_curve.hpp"

namespace windest {

/// Raw physical constants, SI units. Derived quantities (swept area,
/// equivalent inertia) are computed by TurbineParams.
struct TurbineSpec {
  double rho = 0.0;                // air density, kg/m^3
  double rotor_radius = 0.0;       // m
  double gear_ratio = 0.0;         // omega_g / omega_r
  double inertia_generator = 0.0;  // kg m^2
  double inertia_rotor = 0.0;      // kg m^2
  double omega_r_min = 0.1;        // rad/s, lower bound on rotor speed
};

class TurbineParams {
 public:
  explicit TurbineParams(const TurbineSpec& spec);

  double rho() const noexcept { return spec_.rho; }
  double rotor_radius() const noexcept { return spec_.rotor_radius; }
  double gear_ratio() const noexcept { return spec_.gear_ratio; }
  double inertia_generator() const noexcept { return spec_.inertia_generator; }
  double inertia_rotor() const noexcept { return spec_.inertia_rotor; }
  double omega_r_min() const noexcept { return spec_.omega_r_min; }
  const TurbineSpec& spec() const noexcept { return spec_; }

  // pi R^2
  double swept_area() const noexcept { return swept_area_; }
  // J_g + J_r / N^2, referred to the generator shaft
  double inertia_equivalent() const noexcept { return inertia_equivalent_; }
  // rho A / (2 N J), the constant in front of the torque nonlinearity
  double phi_scale() const noexcept { return phi_scale_; }

 private:
  TurbineSpec spec_;
  double swept_area_;
  double inertia_equivalent_;
  double phi_scale_;
};

/// Publicly documented 5 MW reference machine.
TurbineParams nrel5mw_params();

/// 5 MW geometry with both inertias divided by 3.2. This is the plant used
/// for the stepwise-wind case studies: it places the estimator loop gain
/// (1/N) dPhi/dU at 5-9 m/s inside the sector [0.016, 0.095].
TurbineParams case_study_params();

// key=value text, one per line, '#' comments. Keys: rho, rotor_radius,
// gear_ratio, inertia_generator, inertia_rotor, omega_r_min. Optional
// swept_area and inertia_equivalent are checked against the derived values.
TurbineParams load_turbine_params(std::istream& in);
TurbineParams load_turbine_params(const std::filesystem::path& path);
void save_turbine_params(std::ostream& out, const TurbineParams& params);

struct PlantState {
  double omega_r = 0.0;  // rotor speed, rad/s
  double t = 0.0;        // s
};

/// Phi(omega_r, U) = rho A / (2 N J) * U^3 / omega_r * C_p(omega_r R / U),
/// the aerodynamic torque divided by N J. Throws EnvelopeError if the
/// operating point is outside the curve or below omega_r_min.
double phi(const TurbineParams& params, const CpCurve& curve, double omega_r, double u);

/// dPhi/dU = rho A R U / (2 N J) * kappa(lambda).
double phi_prime_u(const TurbineParams& params, const CpCurve& curve, double omega_r, double u);

struct ClampedPhi {
  double value = 0.0;
  bool clamped = false;
};

/// Phi for a wind argument that may have left the envelope (an estimate
/// mid-transient). The tip-speed ratio is clamped to the nearest envelope
/// edge and Phi is evaluated at that edge, so the wind argument used is
/// omega_r R / lambda_edge. Non-positive winds map to lambda_max.
ClampedPhi phi_clamped(const TurbineParams& params, const CpCurve& curve, double omega_r, double u);

/// Generator torque T_g = K omega_g^2.
double torque_controller(double k_opt, double omega_g);

/// K = rho A R^3 C_p* / (2 N^3 lambda*^3): tracks lambda* in steady state.
double optimal_torque_gain(const TurbineParams& params, const CpCurve& curve);

/// Rotor speed at which the optimal-gain controller balances wind u.
double steady_state_rotor_speed(const TurbineParams& params, const CpCurve& curve, double u);

/// One classical RK4 step of omega_r' = Phi(omega_r, U)/N - T_g/(N J) with
/// T_g and U held over the step.
PlantState step_plant(const TurbineParams& params, const CpCurve& curve, const PlantState& state,
                      double t_g, double u, double dt);

}  // namespace windest
