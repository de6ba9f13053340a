#include "windest/stability.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "windest/errors.hpp"
#include "windest/kernels.hpp"
#include "windest/text_io.hpp"

namespace windest {

namespace {

constexpr double kMarginTolerance = 1e-3;
constexpr int kBisectionCap = 60;
constexpr int kBracketSamples = 33;

double bisect_margin(const std::function<bool(double)>& certified, double hi, const char* what) {
  if (!(hi > 0.0)) throw std::invalid_argument(std::string(what) + ": upper bracket must be positive");
  if (!certified(0.0)) {
    throw std::invalid_argument(std::string(what) + ": not certified at zero, no stable range to search");
  }
  std::vector<bool> pattern(kBracketSamples);
  for (int i = 0; i < kBracketSamples; ++i) {
    pattern[i] = certified(hi * i / (kBracketSamples - 1));
  }
  int first_fail = -1;
  for (int i = 0; i < kBracketSamples; ++i) {
    if (!pattern[i]) {
      if (first_fail < 0) first_fail = i;
    } else if (first_fail >= 0) {
      throw NonMonotoneCertificateError(std::string(what) + ": certificate regained at " +
                                        text::format_double(hi * i / (kBracketSamples - 1)) +
                                        " after being lost; narrow the bracket");
    }
  }
  if (first_fail < 0) {
    throw std::invalid_argument(std::string(what) + ": still certified at the upper bracket " +
                                text::format_double(hi));
  }
  double lo = hi * (first_fail - 1) / (kBracketSamples - 1);
  double up = hi * first_fail / (kBracketSamples - 1);
  for (int it = 0; it < kBisectionCap && up - lo > kMarginTolerance; ++it) {
    const double mid = 0.5 * (lo + up);
    (certified(mid) ? lo : up) = mid;
  }
  return lo;
}

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::ConvergenceCertified ? "ConvergenceCertified" : "NotCertified";
}

OperatingEnvelope default_envelope(const TurbineParams& params, const CpCurve& curve) {
  OperatingEnvelope env;
  env.u = {4.0, 11.0};
  env.omega_r = {steady_state_rotor_speed(params, curve, env.u.lo),
                 steady_state_rotor_speed(params, curve, env.u.hi)};
  env.grid_n = 200;
  return env;
}

SectorBounds compute_sector_bounds(const TurbineParams& params, const CpCurve& curve, Range omega_r, Range u,
                                   std::size_t grid_n) {
  if (grid_n == 0) throw std::invalid_argument("sector bounds: empty grid");
  if (!(omega_r.lo <= omega_r.hi) || !(u.lo <= u.hi)) {
    throw std::invalid_argument("sector bounds: empty envelope");
  }
  if (!(u.lo > 0.0)) throw std::invalid_argument("sector bounds: wind range must be positive");
  if (!(omega_r.lo >= params.omega_r_min())) {
    throw std::invalid_argument("sector bounds: rotor speed range below omega_r_min");
  }
  const auto ext = kernels::sector_ratio_extrema(params, curve, omega_r.lo, omega_r.hi, u.lo, u.hi, grid_n);
  if (ext.used == 0) {
    throw std::invalid_argument("sector bounds: no grid sample lies inside the C_p envelope");
  }
  if (!(ext.max > ext.min)) {
    throw std::invalid_argument("sector bounds: degenerate sector (k1 == k2)");
  }
  SectorBounds b;
  b.k1 = 0.99 * ext.min;
  b.k2 = 1.01 * ext.max;
  b.envelope = {omega_r, u, grid_n, ext.used, ext.skipped};
  return b;
}

CircleSpec circle_from_sector(double k1, double k2) {
  if (!(k1 > 0.0) || !(k2 >= k1) || !std::isfinite(k2)) {
    throw std::invalid_argument("circle: need 0 < k1 <= k2");
  }
  CircleSpec c;
  c.k1 = k1;
  c.k2 = k2;
  c.alpha = (k2 + k1) / (2.0 * k1 * k2);
  c.center = -c.alpha;
  c.radius = (k2 - k1) / (2.0 * k1 * k2);
  return c;
}

CircleSpec circle_from_sector(const SectorBounds& bounds) { return circle_from_sector(bounds.k1, bounds.k2); }

CircleSpec case_study_circle() { return circle_from_sector(kCaseStudyK1, kCaseStudyK2); }

double estimator_loop_gain(const TurbineParams& params, const CpCurve& curve, double omega_r, double u) {
  return phi_prime_u(params, curve, omega_r, u) / params.gear_ratio();
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw std::invalid_argument("log grid: need 0 < lo < hi and n >= 2");
  }
  std::vector<double> w(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  w.front() = lo;
  w.back() = hi;
  return w;
}

FrequencyResponse frequency_response(double gamma, double beta, double delay, std::vector<double> omega_grid) {
  if (omega_grid.empty()) throw std::invalid_argument("frequency response: empty grid");
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    if (!(omega_grid[i] > 0.0)) {
      throw std::invalid_argument("frequency response: grid must exclude w <= 0 (double pole at the origin)");
    }
    if (i > 0 && !(omega_grid[i] > omega_grid[i - 1])) {
      throw std::invalid_argument("frequency response: grid must be strictly increasing");
    }
  }
  FrequencyResponse fr;
  fr.omega = std::move(omega_grid);
  fr.g.resize(fr.omega.size());
  kernels::loop_frequency_response(gamma, beta, delay, fr.omega, fr.g);
  return fr;
}

DistanceResult distance_criterion(const FrequencyResponse& fr, const CircleSpec& circle) {
  if (fr.omega.size() != fr.g.size()) throw std::invalid_argument("distance criterion: malformed response");
  if (fr.omega.size() < 2000 || fr.omega.front() > 1e-3 || fr.omega.back() < 1e3) {
    throw GridCoverageError("distance criterion: grid must span [1e-3, 1e3] rad/s with at least 2000 points");
  }
  const auto near = kernels::nearest_to(fr.g, {circle.center, 0.0});
  if (near.index == 0 || near.index + 1 == fr.g.size()) {
    throw GridCoverageError("distance criterion: minimum at grid endpoint w=" +
                            text::format_double(fr.omega[near.index]) + "; widen the grid");
  }
  DistanceResult r;
  r.min_distance = near.distance;
  r.argmin_omega = fr.omega[near.index];
  r.radius = circle.radius;
  r.verdict = near.distance > circle.radius ? Verdict::ConvergenceCertified : Verdict::NotCertified;
  return r;
}

FrequencyResponse scale_response(const FrequencyResponse& fr, double alpha) {
  FrequencyResponse out = fr;
  for (auto& g : out.g) g /= alpha;
  return out;
}

CircleSpec unit_center_circle(const CircleSpec& circle) {
  CircleSpec c = circle;
  c.center = circle.center / circle.alpha;
  c.radius = circle.radius / circle.alpha;
  c.alpha = 1.0;
  return c;
}

DistanceResult check_loop(double gamma, double beta, double delay, const CircleSpec& circle,
                          const GridSettings& grid) {
  double lo = grid.omega_lo;
  double hi = grid.omega_hi;
  const double per_decade = static_cast<double>(grid.points) / std::log10(hi / lo);
  for (int widen = 0;; ++widen) {
    const auto n = static_cast<std::size_t>(std::llround(per_decade * std::log10(hi / lo)));
    const auto fr = frequency_response(gamma, beta, delay, log_grid(lo, hi, n));
    const auto near = kernels::nearest_to(fr.g, {circle.center, 0.0});
    const bool at_low = near.index == 0;
    const bool at_high = near.index + 1 == fr.g.size();
    if (!at_low && !at_high) {
      return {near.distance > circle.radius ? Verdict::ConvergenceCertified : Verdict::NotCertified,
              near.distance, fr.omega[near.index], circle.radius};
    }
    if (widen == grid.max_widenings) {
      if (at_low) {
        throw GridCoverageError("distance criterion: minimum keeps sitting at the low-frequency endpoint");
      }
      const double tail = std::sqrt(gamma * gamma / (hi * hi) + beta * beta / (hi * hi * hi * hi));
      const double bound = std::abs(circle.center) - tail;
      DistanceResult r;
      r.radius = circle.radius;
      if (bound < near.distance) {
        r.min_distance = bound;
        r.argmin_omega = std::numeric_limits<double>::infinity();
      } else {
        r.min_distance = near.distance;
        r.argmin_omega = fr.omega[near.index];
      }
      r.verdict = r.min_distance > circle.radius ? Verdict::ConvergenceCertified : Verdict::NotCertified;
      return r;
    }
    if (at_low) {
      lo /= 10.0;
    } else {
      hi *= 10.0;
    }
  }
}

double max_stable_beta(double gamma, double delay, const CircleSpec& circle, double beta_hi) {
  return bisect_margin([&](double beta) { return check_loop(gamma, beta, delay, circle).certified(); }, beta_hi,
                       "beta margin");
}

double max_stable_delay(double gamma, double beta, const CircleSpec& circle, double t_hi) {
  return bisect_margin([&](double t) { return check_loop(gamma, beta, t, circle).certified(); }, t_hi,
                       "delay margin");
}

}  // namespace windest
