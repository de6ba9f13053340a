#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "windest/cp_curve.hpp"
#include "windest/turbine.hpp"

namespace windest {

enum class EstimatorFamily {
  IandI,        // internal state U^I with output U^I + gamma omega_r
  EquivalentP,  // torque balance with proportional correction
  PI,           // torque balance with proportional-integral correction
};

std::string_view to_string(EstimatorFamily family);
EstimatorFamily parse_family(std::string_view name);

struct EstimatorConfig {
  EstimatorFamily family = EstimatorFamily::PI;
  double gamma = 0.0;  // proportional gain, (m/s)/(rad/s)
  double beta = 0.0;   // integral gain, (m/s)/rad; PI only
  double delay = 0.0;  // loop delay T, s
  double dt = 0.01;    // sample time, s
};

// Throws std::invalid_argument unless gamma > 0, beta >= 0, dt > 0 and the
// delay is a non-negative integer multiple of dt.
void validate(const EstimatorConfig& config);

// Number of samples spanned by the loop delay.
std::size_t delay_steps(const EstimatorConfig& config);

/// Fixed-length FIFO standing in for e^{-sT}: each push returns the sample
/// pushed `length()` calls earlier. Length zero is the identity.
class DelayLine {
 public:
  DelayLine() = default;
  DelayLine(std::size_t length, double initial);

  double push(double sample);
  std::size_t length() const noexcept { return buffer_.size(); }

 private:
  std::vector<double> buffer_;
  std::size_t head_ = 0;
};

struct IandIState {
  double u_hat_internal = 0.0;  // U^I, m/s
};

struct ProportionalState {
  double omega_hat_r = 0.0;  // rad/s
};

struct PIState {
  double omega_hat_r = 0.0;   // rad/s
  double integral_eps = 0.0;  // integral of omega_r - omega_hat_r, rad
};

struct EstimatorState {
  std::variant<IandIState, ProportionalState, PIState> core;
  DelayLine delay;
  // Steps where the delayed estimate pushed lambda outside the C_p envelope.
  std::uint64_t clamp_count = 0;
};

struct Measurement {
  double omega_r = 0.0;  // rad/s
  double t_g = 0.0;      // generator torque, N m
};

struct EstimatorStep {
  EstimatorState state;
  double u_hat = 0.0;  // estimate emitted at the start of the step, m/s
};

/// State whose first emitted estimate equals u_guess. The delay line is
/// pre-filled with u_guess.
EstimatorState init_estimator(const EstimatorConfig& config, double omega_r0, double u_guess);

/// Estimate for the current measurement without advancing the state.
double estimator_output(const EstimatorState& state, const EstimatorConfig& config, double omega_r);

/// Estimated rotor speed, when the family carries one.
std::optional<double> omega_hat(const EstimatorState& state);

/// Pushes the newest feedback sample through the loop delay.
double delayed_feedback(EstimatorState& state, double sample);

// One forward-Euler step of each realisation. The emitted estimate is
// delayed by T before it enters Phi; the output map uses the current,
// undelayed rotor speed.
EstimatorStep step_iandi(const TurbineParams& params, const CpCurve& curve, EstimatorState state,
                         const Measurement& m, const EstimatorConfig& config);
EstimatorStep step_equivalent_p(const TurbineParams& params, const CpCurve& curve, EstimatorState state,
                                const Measurement& m, const EstimatorConfig& config);
EstimatorStep step_pi(const TurbineParams& params, const CpCurve& curve, EstimatorState state,
                      const Measurement& m, const EstimatorConfig& config);

// Dispatches on config.family.
EstimatorStep step_estimator(const TurbineParams& params, const CpCurve& curve, EstimatorState state,
                             const Measurement& m, const EstimatorConfig& config);

}  // namespace windest
