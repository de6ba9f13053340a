#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "support.hpp"
#include "windest/errors.hpp"
#include "windest/turbine.hpp"

using namespace windest;
using doctest::Approx;

TEST_CASE("derived parameters") {
  const auto p = testing::toy_params();
  CHECK(p.swept_area() == Approx(std::numbers::pi * 100.0));
  CHECK(p.inertia_equivalent() == Approx(105.0));
  CHECK(p.phi_scale() == Approx(1.2 * std::numbers::pi * 100.0 / (2.0 * 2.0 * 105.0)));

  const auto ref = nrel5mw_params();
  const auto cs = case_study_params();
  CHECK(cs.inertia_equivalent() == Approx(ref.inertia_equivalent() / 3.2).epsilon(1e-12));
  CHECK(cs.rotor_radius() == ref.rotor_radius());
}

TEST_CASE("parameters must be positive") {
  TurbineSpec s = testing::toy_params().spec();
  s.gear_ratio = 0.0;
  CHECK_THROWS_AS(TurbineParams{s}, std::invalid_argument);
  s = testing::toy_params().spec();
  s.rho = std::nan("");
  CHECK_THROWS_AS(TurbineParams{s}, std::invalid_argument);
}

TEST_CASE("phi against the closed form") {
  const auto p = testing::toy_params();
  const auto c = testing::sine_curve();
  // omega_r = 3 rad/s, U = 6 m/s: lambda = 5.
  const double expected = 1.2 * std::numbers::pi * 100.0 / (2.0 * 2.0 * 105.0) * 216.0 / 3.0 * c.cp(5.0);
  CHECK(phi(p, c, 3.0, 6.0) == Approx(expected).epsilon(1e-14));
  const double dexp = 1.2 * std::numbers::pi * 100.0 * 10.0 * 6.0 / (2.0 * 2.0 * 105.0) * c.kappa(5.0);
  CHECK(phi_prime_u(p, c, 3.0, 6.0) == Approx(dexp).epsilon(1e-14));
}

TEST_CASE("phi_prime_u agrees with central differences") {
  const auto p = case_study_params();
  const auto c = synthetic_cp_curve();
  for (double u = 4.0; u <= 11.0; u += 0.5) {
    for (double w = 0.5; w <= 1.3; w += 0.1) {
      const double h = 1e-5 * u;
      if (!c.contains(w * p.rotor_radius() / (u + h)) || !c.contains(w * p.rotor_radius() / (u - h))) continue;
      const double fd = (phi(p, c, w, u + h) - phi(p, c, w, u - h)) / (2.0 * h);
      CHECK(testing::rel_close(phi_prime_u(p, c, w, u), fd, 1e-4, 1e-9));
    }
  }
}

TEST_CASE("phi rejects points outside the envelope") {
  const auto p = testing::toy_params();
  const auto c = testing::sine_curve();
  CHECK_THROWS_AS(phi(p, c, 3.0, 1.0), EnvelopeError);    // lambda = 30
  CHECK_THROWS_AS(phi(p, c, 0.05, 6.0), EnvelopeError);   // below omega_r_min
  CHECK_THROWS_AS(phi(p, c, 3.0, -6.0), EnvelopeError);
  CHECK_THROWS_AS(phi_prime_u(p, c, 3.0, 100.0), EnvelopeError);
}

TEST_CASE("clamped phi evaluates at the envelope edge") {
  const auto p = testing::toy_params();
  const auto c = testing::sine_curve();
  const auto inside = phi_clamped(p, c, 3.0, 6.0);
  CHECK_FALSE(inside.clamped);
  CHECK(inside.value == phi(p, c, 3.0, 6.0));

  // lambda = 30 > 10: evaluated at lambda = 10, U = 3.
  const auto high = phi_clamped(p, c, 3.0, 1.0);
  CHECK(high.clamped);
  CHECK(high.value == Approx(phi(p, c, 3.0, 3.0)));
  // lambda = 1 < 2: evaluated at lambda = 2, U = 15.
  const auto low = phi_clamped(p, c, 3.0, 30.0);
  CHECK(low.clamped);
  CHECK(low.value == Approx(phi(p, c, 3.0, 15.0)));
  const auto negative = phi_clamped(p, c, 3.0, -4.0);
  CHECK(negative.clamped);
  CHECK(negative.value == Approx(phi(p, c, 3.0, 3.0)));
}

TEST_CASE("controller and optimal gain") {
  CHECK(torque_controller(2.0, 3.0) == 18.0);
  CHECK_THROWS_AS(torque_controller(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(torque_controller(0.0, 1.0), std::invalid_argument);

  const auto p = testing::toy_params();
  const auto c = testing::sine_curve();
  const double k = optimal_torque_gain(p, c);
  CHECK(k == Approx(1.2 * std::numbers::pi * 100.0 * 1000.0 * 0.5 / (2.0 * 8.0 * 216.0)).epsilon(1e-9));

  // The steady state balances the shaft and sits at lambda*.
  for (double u : {4.0, 7.0, 9.0}) {
    const double w = steady_state_rotor_speed(p, c, u);
    CHECK(w * p.rotor_radius() / u == Approx(c.lambda_star()).epsilon(1e-9));
    const double tg = torque_controller(k, p.gear_ratio() * w);
    CHECK(phi(p, c, w, u) / p.gear_ratio() ==
          Approx(tg / (p.gear_ratio() * p.inertia_equivalent())).epsilon(1e-9));
  }
}

TEST_CASE("plant stays at equilibrium") {
  const auto p = case_study_params();
  const auto c = synthetic_cp_curve();
  const double k = optimal_torque_gain(p, c);
  const double w = steady_state_rotor_speed(p, c, 7.0);
  PlantState s{w, 0.0};
  for (int i = 0; i < 1000; ++i) {
    s = step_plant(p, c, s, torque_controller(k, p.gear_ratio() * s.omega_r), 7.0, 0.01);
  }
  CHECK(s.omega_r == Approx(w).epsilon(1e-10));
  CHECK(s.t == Approx(10.0));
}

namespace {

// Relaxation from lambda = 7.51 toward the equilibrium at lambda = 7.58 with
// U = 8. The trajectory stays inside one table interval, where the
// interpolated C_p is a single cubic and the right-hand side is smooth.
double relax(const TurbineParams& p, const CpCurve& c, double dt, double t_end) {
  const double r = p.rotor_radius();
  const double tg = p.inertia_equivalent() * phi(p, c, 7.58 * 8.0 / r, 8.0);
  PlantState s{7.51 * 8.0 / r, 0.0};
  const auto n = std::llround(t_end / dt);
  for (long long i = 0; i < n; ++i) s = step_plant(p, c, s, tg, 8.0, dt);
  return s.omega_r;
}

}  // namespace

TEST_CASE("plant integrator is fourth order") {
  const auto p = testing::toy_params();
  const auto c = synthetic_cp_curve();
  const double ref = relax(p, c, 1.0 / 2048.0, 1.0);
  CHECK(relax(p, c, 1.0 / 2048.0, 1.0) * p.rotor_radius() / 8.0 < 7.6);
  const double e1 = std::abs(relax(p, c, 0.25, 1.0) - ref);
  const double e2 = std::abs(relax(p, c, 0.125, 1.0) - ref);
  const double e3 = std::abs(relax(p, c, 0.0625, 1.0) - ref);
  CHECK(std::log2(e1 / e2) > 3.7);
  CHECK(std::log2(e2 / e3) > 3.7);
}

TEST_CASE("plant step errors") {
  const auto p = testing::toy_params();
  const auto c = synthetic_cp_curve();
  CHECK_THROWS_AS(step_plant(p, c, {0.6, 0.0}, 0.0, 8.0, 0.0), std::invalid_argument);
  // Huge braking torque drives the rotor below omega_r_min.
  CHECK_THROWS_AS(step_plant(p, c, {0.6, 0.0}, 1e9, 8.0, 0.1), EnvelopeError);
}

TEST_CASE("parameter file round trip and validation") {
  const auto p = nrel5mw_params();
  std::stringstream ss;
  save_turbine_params(ss, p);
  const auto back = load_turbine_params(ss);
  CHECK(back.inertia_rotor() == p.inertia_rotor());
  CHECK(back.phi_scale() == p.phi_scale());

  std::istringstream commented(
      "# comment\nrho = 1.2\nrotor_radius=10\ngear_ratio=2 # inline\ninertia_generator=5\ninertia_rotor=400\n");
  CHECK(load_turbine_params(commented).inertia_equivalent() == Approx(105.0));

  std::istringstream unknown("rho=1.2\nrotor_radius=10\ngear_ratio=2\ninertia_generator=5\ninertia_rotor=400\nfoo=1\n");
  CHECK_THROWS_AS(load_turbine_params(unknown), std::invalid_argument);
  std::istringstream dup("rho=1.2\nrho=1.2\nrotor_radius=10\ngear_ratio=2\ninertia_generator=5\ninertia_rotor=400\n");
  CHECK_THROWS_AS(load_turbine_params(dup), std::invalid_argument);
  std::istringstream missing("rho=1.2\nrotor_radius=10\n");
  CHECK_THROWS_AS(load_turbine_params(missing), std::invalid_argument);
  std::istringstream inconsistent(
      "rho=1.2\nrotor_radius=10\ngear_ratio=2\ninertia_generator=5\ninertia_rotor=400\nswept_area=300\n");
  CHECK_THROWS_AS(load_turbine_params(inconsistent), std::invalid_argument);
}

TEST_CASE("shipped parameter files match the fixtures") {
  const std::filesystem::path dir(WINDEST_DATA_DIR);
  CHECK(load_turbine_params(dir / "nrel5mw.params").phi_scale() == nrel5mw_params().phi_scale());
  CHECK(load_turbine_params(dir / "case_study.params").phi_scale() == case_study_params().phi_scale());
}
