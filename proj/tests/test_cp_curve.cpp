#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "support.hpp"
#include "windest/cp_curve.hpp"
#include "windest/errors.hpp"

using namespace windest;
using testing::rel_close;

TEST_CASE("monotone cubic reproduces nodes and straight lines") {
  MonotoneCubic line({0.0, 1.0, 2.5, 4.0}, {1.0, 3.0, 6.0, 9.0});
  for (double x = 0.0; x <= 4.0; x += 0.125) {
    CHECK(line.value(x) == doctest::Approx(1.0 + 2.0 * x).epsilon(1e-14));
    CHECK(line.derivative(x) == doctest::Approx(2.0).epsilon(1e-14));
  }
  MonotoneCubic steps({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.1, 2.0, 2.05, 5.0});
  for (std::size_t i = 0; i < 5; ++i) CHECK(steps.value(steps.knots()[i]) == steps.values()[i]);
}

TEST_CASE("monotone cubic does not overshoot monotone data") {
  MonotoneCubic m({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.01, 1.0, 1.01, 1.02});
  double prev = m.value(0.0);
  for (double x = 0.001; x <= 4.0; x += 0.001) {
    const double v = m.value(x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("peak and kappa root of analytic curves") {
  const auto sine = testing::sine_curve();
  CHECK(sine.lambda_star() == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(sine.cp_star() == doctest::Approx(0.5).epsilon(1e-12));

  // The interpolant's slope is zero at the node where the data turns, so
  // the peak lands on the table node closest to the true maximiser.
  const auto cg = testing::cubic_gauss_curve(8001);
  const double h = 9.0 / 8000.0;
  CHECK(std::abs(cg.lambda_star() - 6.0) <= 0.5 * h + 1e-12);
  const double node = 1.0 + h * std::round((cg.lambda_star() - 1.0) / h);
  CHECK(std::abs(cg.lambda_star() - node) < 1e-9);
  CHECK(std::abs(cg.lambda_zero() - 4.0) < 1e-6);
  CHECK(std::abs(cg.kappa(cg.lambda_zero())) < 1e-9);
}

TEST_CASE("synthetic fixture shape") {
  const auto c = synthetic_cp_curve();
  CHECK(c.lambda_min() == 2.0);
  CHECK(c.lambda_max() == 10.0);
  CHECK(c.lambda_star() == doctest::Approx(7.5).epsilon(1e-9));
  CHECK(c.cp_star() == doctest::Approx(0.48).epsilon(1e-12));
  CHECK(c.lambda_zero() > c.lambda_min());
  CHECK(c.lambda_zero() < c.lambda_star());
  CHECK(c.kappa(c.lambda_zero() - 0.1) < 0.0);
  CHECK(c.kappa(c.lambda_zero() + 0.1) > 0.0);
}

TEST_CASE("cp_prime agrees with central differences") {
  const auto c = synthetic_cp_curve();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lam(2.05, 9.95);
  const double h = 1e-6;
  for (int i = 0; i < 500; ++i) {
    const double l = lam(rng);
    const double fd = (c.cp(l + h) - c.cp(l - h)) / (2.0 * h);
    CHECK(rel_close(c.cp_prime(l), fd, 1e-4, 1e-8));
  }
}

TEST_CASE("kappa definition") {
  const auto c = synthetic_cp_curve();
  for (double l = 2.0; l <= 10.0; l += 0.37) {
    CHECK(c.kappa(l) == doctest::Approx(3.0 * c.cp(l) / l - c.cp_prime(l)).epsilon(1e-14));
  }
}

TEST_CASE("queries outside the envelope throw") {
  const auto c = synthetic_cp_curve();
  CHECK_THROWS_AS(c.cp(1.999), EnvelopeError);
  CHECK_THROWS_AS(c.cp_prime(10.001), EnvelopeError);
  CHECK_THROWS_AS(c.kappa(std::nan("")), EnvelopeError);
  CHECK_NOTHROW(c.cp(2.0));
  CHECK_NOTHROW(c.cp(10.0));
}

TEST_CASE("table validation") {
  using V = std::vector<double>;
  CHECK_THROWS_AS(CpCurve::from_table(V{1, 2, 3}, V{0.1, 0.3, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(CpCurve::from_table(V{1, 2, 2, 4}, V{0.1, 0.3, 0.3, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(CpCurve::from_table(V{0, 2, 3, 4}, V{0.1, 0.3, 0.2, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(CpCurve::from_table(V{1, 2, 3, 4}, V{0.0, 0.3, 0.2, 0.1}), std::invalid_argument);
  // Two peaks.
  CHECK_THROWS_AS(CpCurve::from_table(V{1, 2, 3, 4, 5}, V{0.1, 0.3, 0.2, 0.3, 0.1}), std::invalid_argument);
  // Monotone, no interior peak.
  CHECK_THROWS_AS(CpCurve::from_table(V{1, 2, 3, 4}, V{0.1, 0.2, 0.3, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(CpCurve::from_table(V{1, 2, 3, 4}, V{0.1, std::nan(""), 0.3, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(CpCurve::from_table(V{1, 2, 3}, V{0.1, 0.3}), std::invalid_argument);
  CHECK_NOTHROW(CpCurve::from_table(V{1, 2, 3, 4}, V{0.1, 0.3, 0.2, 0.1}));
}

TEST_CASE("CSV round trip") {
  const auto c = synthetic_cp_curve();
  std::stringstream ss;
  save_cp_curve(ss, c);
  const auto back = load_cp_curve(ss);
  REQUIRE(back.lambda_grid().size() == c.lambda_grid().size());
  for (std::size_t i = 0; i < c.lambda_grid().size(); ++i) {
    CHECK(back.lambda_grid()[i] == c.lambda_grid()[i]);
    CHECK(back.cp_values()[i] == c.cp_values()[i]);
  }
  CHECK(back.lambda_star() == c.lambda_star());
}

TEST_CASE("CSV parsing errors") {
  std::istringstream no_header("2,0.1\n3,0.3\n4,0.2\n5,0.1\n");
  CHECK_THROWS_AS(load_cp_curve(no_header), std::invalid_argument);
  std::istringstream bad_row("lambda,cp\n2,0.1\n3,zz\n4,0.2\n5,0.1\n");
  CHECK_THROWS_AS(load_cp_curve(bad_row), std::invalid_argument);
  std::istringstream ok("lambda,cp\n2,0.1\n3,0.3\n\n4,0.2\n5,0.1\n");
  CHECK(load_cp_curve(ok).lambda_star() > 2.0);
}

TEST_CASE("shipped data file matches the built-in table") {
  const auto file = load_cp_curve(std::filesystem::path(WINDEST_DATA_DIR) / "cp_synthetic.csv");
  const auto built = synthetic_cp_curve();
  REQUIRE(file.lambda_grid().size() == built.lambda_grid().size());
  for (std::size_t i = 0; i < built.lambda_grid().size(); ++i) CHECK(file.cp_values()[i] == built.cp_values()[i]);
}
