#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "windest/cp_curve.hpp"
#include "windest/turbine.hpp"

namespace windest {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct OperatingEnvelope {
  Range omega_r;  // rad/s
  Range u;        // m/s
  std::size_t grid_n = 0;
  std::size_t samples_used = 0;
  std::size_t samples_skipped = 0;  // lambda outside the C_p envelope
};

/// k1 U <= Phi(omega_r, U) <= k2 U over an operating envelope.
struct SectorBounds {
  double k1 = 0.0;
  double k2 = 0.0;
  OperatingEnvelope envelope;
};

/// Disk with real-axis diameter [-1/k1, -1/k2].
struct CircleSpec {
  double k1 = 0.0;
  double k2 = 0.0;
  double center = 0.0;  // -(k2 + k1) / (2 k1 k2)
  double radius = 0.0;  // (k2 - k1) / (2 k1 k2)
  double alpha = 0.0;   // scaling that moves the center to -1
};

struct FrequencyResponse {
  std::vector<double> omega;  // rad/s, strictly increasing, > 0
  std::vector<std::complex<double>> g;
};

enum class Verdict { ConvergenceCertified, NotCertified };

std::string_view to_string(Verdict v);

struct DistanceResult {
  Verdict verdict = Verdict::NotCertified;
  double min_distance = 0.0;
  double argmin_omega = 0.0;  // +inf when the infimum is the w -> inf limit
  double radius = 0.0;

  bool certified() const noexcept { return verdict == Verdict::ConvergenceCertified; }
};

// Sector constants quoted for the stepwise-wind case studies.
inline constexpr double kCaseStudyK1 = 0.016;
inline constexpr double kCaseStudyK2 = 0.095;

/// Envelope U in [4, 11] m/s, omega_r spanning the optimal-tracking rotor
/// speeds for that wind range, 200 x 200 samples.
OperatingEnvelope default_envelope(const TurbineParams& params, const CpCurve& curve);

/// k1 / k2 are the min / max of Phi/U over the lattice, widened outward by
/// 1% (k1 * 0.99, k2 * 1.01). Samples whose tip-speed ratio falls outside
/// the C_p envelope are skipped and counted.
SectorBounds compute_sector_bounds(const TurbineParams& params, const CpCurve& curve, Range omega_r, Range u,
                                   std::size_t grid_n);

CircleSpec circle_from_sector(double k1, double k2);
CircleSpec circle_from_sector(const SectorBounds& bounds);
CircleSpec case_study_circle();

/// Small-signal gain (1/N) dPhi/dU seen by the estimator's correction loop
/// at an operating point; the quantity the sector has to contain for the
/// circle test to speak about the simulated loop.
double estimator_loop_gain(const TurbineParams& params, const CpCurve& curve, double omega_r, double u);

std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// G(jw) = (gamma jw + beta) / (jw)^2 * exp(-jwT) on the given grid.
FrequencyResponse frequency_response(double gamma, double beta, double delay, std::vector<double> omega_grid);

/// Minimum of |G(jw) - C| over the grid against the circle radius. Requires
/// the grid to cover [1e-3, 1e3] rad/s with at least 2000 points; throws
/// GridCoverageError when the minimum sits on a grid endpoint.
DistanceResult distance_criterion(const FrequencyResponse& fr, const CircleSpec& circle);

/// G / alpha against the circle rescaled so its center is -1.
FrequencyResponse scale_response(const FrequencyResponse& fr, double alpha);
CircleSpec unit_center_circle(const CircleSpec& circle);

struct GridSettings {
  double omega_lo = 1e-3;
  double omega_hi = 1e3;
  std::size_t points = 4000;
  int max_widenings = 3;
};

/// Distance criterion for one gain/delay setting on a log grid that widens
/// by a decade (at constant density) while the minimum sits on an endpoint.
/// If the minimum is still at the high end after the last widening, the
/// remaining tail is bounded analytically: |G(jw)| <= sqrt(gamma^2/w^2 +
/// beta^2/w^4) beyond the grid.
DistanceResult check_loop(double gamma, double beta, double delay, const CircleSpec& circle,
                          const GridSettings& grid = {});

/// Largest beta (to 1e-3) that keeps the loop certified, searched on
/// [0, beta_hi]. The certificate must be monotone on 33 samples of the
/// bracket; otherwise NonMonotoneCertificateError.
double max_stable_beta(double gamma, double delay, const CircleSpec& circle, double beta_hi = 100.0);

/// As max_stable_beta over the delay on [0, t_hi].
double max_stable_delay(double gamma, double beta, const CircleSpec& circle, double t_hi = 5.0);

}  // namespace windest
