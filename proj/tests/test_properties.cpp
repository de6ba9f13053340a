// Randomised checks of the structural properties the analysis relies on.
// Seeds are fixed so failures reproduce.

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "windest/harness.hpp"
#include "windest/paper_cases.hpp"
#include "windest/stability.hpp"

using namespace windest;

TEST_CASE("interpolant reproduces random single-peak tables and keeps one peak") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> step(0.05, 0.5), rise(0.001, 0.1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x{1.0}, y{0.05};
    const int n = 6 + trial % 20;
    const int peak = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 2));
    for (int i = 1; i < n; ++i) {
      x.push_back(x.back() + step(rng));
      y.push_back(i <= peak ? y.back() + rise(rng) : std::max(1e-4, y.back() - rise(rng)));
      if (i > peak && y.back() >= y[y.size() - 2]) y.back() = 0.5 * y[y.size() - 2];
    }
    const auto c = CpCurve::from_table(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(c.cp(x[i]) == y[i]);
    CHECK(c.lambda_star() >= x[peak - 1]);
    CHECK(c.lambda_star() <= x[peak + 1]);
    // Monotone up to lambda*, monotone down after.
    double prev = c.cp(x.front());
    bool past_peak = false;
    for (double l = x.front(); l <= x.back(); l += (x.back() - x.front()) / 997.0) {
      const double v = c.cp(l);
      if (l <= c.lambda_star()) {
        REQUIRE(v >= prev - 1e-15);
      } else if (!past_peak) {
        past_peak = true;  // this step straddles the peak
      } else {
        REQUIRE(v <= prev + 1e-15);
      }
      prev = v;
    }
  }
}

TEST_CASE("Phi increases with U where lambda exceeds lambda_0") {
  const auto p = case_study_params();
  const auto c = synthetic_cp_curve();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> omega(0.4, 1.3), lam(c.lambda_zero() + 1e-3, c.lambda_max());
  for (int i = 0; i < 200; ++i) {
    const double w = omega(rng);
    const double l_hi = lam(rng);
    const double l_lo = std::uniform_real_distribution<double>(c.lambda_zero() + 1e-3, l_hi)(rng);
    // Increasing U means decreasing lambda; stay inside (lambda_0, lambda_max].
    double prev = -1.0;
    for (int k = 0; k < 10; ++k) {
      const double l = l_hi - (l_hi - l_lo) * k / 9.0;
      const double u = w * p.rotor_radius() / l;
      const double f = phi(p, c, w, u);
      if (k > 0 && l_hi - l_lo > 1e-9) REQUIRE(f > prev);
      prev = f;
      CHECK(phi_prime_u(p, c, w, u) > 0.0);
    }
  }
}

TEST_CASE("sector bounds hold on random sub-envelopes") {
  const auto p = case_study_params();
  const auto c = synthetic_cp_curve();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u0(4.0, 9.0), du(0.5, 3.0), w0(0.4, 1.0), dw(0.05, 0.4);
  for (int trial = 0; trial < 10; ++trial) {
    Range ur, wr;
    ur.lo = u0(rng);
    ur.hi = ur.lo + du(rng);
    wr.lo = w0(rng);
    wr.hi = wr.lo + dw(rng);
    const std::size_t n = 40;
    SectorBounds s;
    try {
      s = compute_sector_bounds(p, c, wr, ur, n);
    } catch (const std::invalid_argument&) {
      continue;  // no lattice point inside the C_p envelope
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double w = wr.lo + (wr.hi - wr.lo) * i / (n - 1.0);
        const double uu = ur.lo + (ur.hi - ur.lo) * j / (n - 1.0);
        if (!c.contains(w * p.rotor_radius() / uu)) continue;
        const double f = phi(p, c, w, uu);
        REQUIRE(s.k1 * uu <= f);
        REQUIRE(f <= s.k2 * uu);
      }
    }
  }
}

TEST_CASE("certified configurations converge in simulation") {
  const auto setup = default_case_setup();
  const auto circle = setup.circle;
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> gamma(10.0, 100.0), beta(0.0, 30.0);
  std::uniform_int_distribution<int> delay_steps(0, 60);
  std::vector<CaseDefinition> defs;
  int attempts = 0;
  while (defs.size() < 20 && attempts++ < 2000) {
    CaseDefinition d{"random", EstimatorFamily::PI, gamma(rng), beta(rng), 0.01 * delay_steps(rng)};
    if (check_loop(d.gamma, d.beta, d.delay, circle).certified()) defs.push_back(d);
  }
  REQUIRE(defs.size() == 20);
  std::vector<Scenario> scenarios;
  for (const auto& d : defs) scenarios.push_back(stepwise_scenario(setup, d));
  const auto traces = run_batch(scenarios);
  for (std::size_t i = 0; i < defs.size(); ++i) {
    INFO("gamma=" << defs[i].gamma << " beta=" << defs[i].beta << " T=" << defs[i].delay);
    const auto a = classify_trace(traces[i], scenarios[i].wind_profile, scenarios[i].duration);
    CHECK(a.overall == SegmentLabel::Converged);
  }
}

TEST_CASE("larger delay never helps at fixed gains") {
  const auto circle = case_study_circle();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> gamma(20.0, 100.0), beta(0.0, 30.0);
  for (int i = 0; i < 20; ++i) {
    const double g = gamma(rng);
    const double b = beta(rng);
    double prev = 1e300;
    for (double t = 0.0; t <= 0.6; t += 0.05) {
      const double d = check_loop(g, b, t, circle).min_distance;
      CHECK(d <= prev + 1e-9);
      prev = d;
    }
  }
}
