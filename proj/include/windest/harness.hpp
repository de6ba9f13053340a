#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "windest/cp_curve.hpp"
#include "windest/estimators.hpp"
#include "windest/stability.hpp"
#include "windest/turbine.hpp"

namespace windest {

struct WindSegment {
  double t_start = 0.0;  // s
  double u = 0.0;        // m/s, held until the next segment
};

struct InitialCondition {
  std::optional<double> omega_r;  // defaults to the tracking speed for the first wind level
  double u_guess = 8.0;
};

struct Scenario {
  std::vector<WindSegment> wind_profile;
  double duration = 0.0;
  double dt = 0.01;
  std::shared_ptr<const TurbineParams> turbine;
  std::shared_ptr<const CpCurve> curve;
  std::optional<double> controller_gain;  // defaults to optimal_torque_gain
  EstimatorConfig estimator;
  InitialCondition initial;
  // Sector used for the circle verdict attached to this scenario.
  double k1 = kCaseStudyK1;
  double k2 = kCaseStudyK2;
};

// Throws std::invalid_argument on a malformed scenario.
void validate(const Scenario& scn);

double wind_at(std::span<const WindSegment> profile, double t);

struct TraceRecord {
  double t = 0.0;
  double u_true = 0.0;
  double omega_r = 0.0;
  double omega_hat_r = 0.0;  // NaN for the I&I realisation
  double epsilon = 0.0;      // omega_r - omega_hat_r; NaN for I&I
  double u_hat = 0.0;
  double t_g = 0.0;
  std::uint64_t clamp_count = 0;
};

struct SimTrace {
  std::vector<TraceRecord> records;
  double dt = 0.0;
  bool diverged = false;            // estimate left |U_hat| <= kDivergenceGuard or went non-finite
  std::optional<double> stop_time;  // set when the run ended early
};

inline constexpr double kDivergenceGuard = 1e3;  // m/s

/// Closed loop: RK4 plant, optimal-gain torque law on measured generator
/// speed, and the configured estimator, all on the scenario's time grid.
/// Estimator divergence is recorded, not thrown.
SimTrace run_scenario(const Scenario& scn);

/// Independent scenarios, run concurrently.
std::vector<SimTrace> run_batch(std::span<const Scenario> scenarios);

namespace reference {
std::vector<SimTrace> run_batch(std::span<const Scenario> scenarios);
}

enum class SegmentLabel { Converged, Oscillatory, Diverged, NotReached };

std::string_view to_string(SegmentLabel label);

struct ClassifierSettings {
  double settle_fraction = 0.2;  // trailing share of a segment that is inspected
  double tolerance = 0.05;       // m/s
  std::size_t growth_windows = 3;
};

struct SegmentAssessment {
  double t_start = 0.0;
  double t_end = 0.0;
  double u = 0.0;
  SegmentLabel label = SegmentLabel::NotReached;
  double settle_error = 0.0;           // max |U_hat - U| over the trailing window
  std::vector<double> trailing_swing;  // peak-to-peak per trailing window, oldest first
};

struct TraceAssessment {
  std::vector<SegmentAssessment> segments;
  SegmentLabel overall = SegmentLabel::Converged;
};

/// Per wind segment: Converged when max |U_hat - U| over the final
/// settle_fraction of the segment is below tolerance; Diverged when the
/// run stopped inside it, or the peak-to-peak swing of the last
/// growth_windows windows (each settle_fraction long) strictly increases;
/// Oscillatory otherwise. The overall label is the worst segment.
TraceAssessment classify_trace(const SimTrace& trace, std::span<const WindSegment> profile, double duration,
                               const ClassifierSettings& settings = {});

}  // namespace windest
