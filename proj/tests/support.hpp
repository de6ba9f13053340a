#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "windest/cp_curve.hpp"
#include "windest/turbine.hpp"

namespace testing {

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

// 0.5 sin(pi (lambda - 2) / 8) on [2, 10]: peak 0.5 at exactly lambda = 6.
inline windest::CpCurve sine_curve(std::size_t n = 33) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = 2.0 + 8.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    x.push_back(l);
    y.push_back(0.5 * std::sin(std::numbers::pi * (l - 2.0) / 8.0) + (i == 0 || i + 1 == n ? 1e-3 : 0.0));
  }
  return windest::CpCurve::from_table(x, y);
}

// lambda^3 exp(-(lambda - 4)^2 / 8) / 500 on [1, 10]. kappa = -lambda^3 g'
// with g = exp(-(lambda-4)^2/8) / 500, so kappa vanishes at lambda = 4; the
// peak sits where 3/lambda = (lambda - 4)/4, i.e. lambda = 6.
inline windest::CpCurve cubic_gauss_curve(std::size_t n) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = 1.0 + 9.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    x.push_back(l);
    y.push_back(l * l * l * std::exp(-(l - 4.0) * (l - 4.0) / 8.0) / 500.0);
  }
  return windest::CpCurve::from_table(x, y);
}

inline windest::TurbineParams toy_params() {
  windest::TurbineSpec s;
  s.rho = 1.2;
  s.rotor_radius = 10.0;
  s.gear_ratio = 2.0;
  s.inertia_generator = 5.0;
  s.inertia_rotor = 400.0;
  return windest::TurbineParams(s);
}

}  // namespace testing
