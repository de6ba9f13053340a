#include "windest/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace windest {

namespace {

template <class T>
T& core_as(EstimatorState& state, const char* op) {
  auto* p = std::get_if<T>(&state.core);
  if (p == nullptr) {
    throw std::invalid_argument(std::string(op) + ": estimator state belongs to another family");
  }
  return *p;
}

// Phi evaluated at the delayed estimate, with envelope clamping counted.
double feedback_phi(const TurbineParams& params, const CpCurve& curve, EstimatorState& state,
                    double omega_r, double u_hat) {
  const double delayed = delayed_feedback(state, u_hat);
  const auto eval = phi_clamped(params, curve, omega_r, delayed);
  if (eval.clamped) ++state.clamp_count;
  return eval.value;
}

}  // namespace

std::string_view to_string(EstimatorFamily family) {
  switch (family) {
    case EstimatorFamily::IandI:
      return "IandI";
    case EstimatorFamily::EquivalentP:
      return "EquivalentP";
    case EstimatorFamily::PI:
      return "PI";
  }
  return "unknown";
}

EstimatorFamily parse_family(std::string_view name) {
  if (name == "IandI") return EstimatorFamily::IandI;
  if (name == "EquivalentP") return EstimatorFamily::EquivalentP;
  if (name == "PI") return EstimatorFamily::PI;
  throw std::invalid_argument("unknown estimator family '" + std::string(name) + "'");
}

void validate(const EstimatorConfig& config) {
  if (!(config.gamma > 0.0) || !std::isfinite(config.gamma)) {
    throw std::invalid_argument("estimator: gamma must be positive");
  }
  if (!(config.beta >= 0.0) || !std::isfinite(config.beta)) {
    throw std::invalid_argument("estimator: beta must be non-negative");
  }
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw std::invalid_argument("estimator: dt must be positive");
  }
  if (!(config.delay >= 0.0) || !std::isfinite(config.delay)) {
    throw std::invalid_argument("estimator: delay must be non-negative");
  }
  const double ratio = config.delay / config.dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("estimator: delay must be an integer multiple of dt");
  }
}

std::size_t delay_steps(const EstimatorConfig& config) {
  validate(config);
  return static_cast<std::size_t>(std::llround(config.delay / config.dt));
}

DelayLine::DelayLine(std::size_t length, double initial) : buffer_(length, initial) {}

double DelayLine::push(double sample) {
  if (buffer_.empty()) return sample;
  const double oldest = buffer_[head_];
  buffer_[head_] = sample;
  head_ = (head_ + 1) % buffer_.size();
  return oldest;
}

EstimatorState init_estimator(const EstimatorConfig& config, double omega_r0, double u_guess) {
  validate(config);
  if (!(omega_r0 > 0.0)) throw std::invalid_argument("estimator: initial rotor speed must be positive");
  if (!(u_guess > 0.0)) throw std::invalid_argument("estimator: initial wind guess must be positive");

  EstimatorState state;
  state.delay = DelayLine(delay_steps(config), u_guess);
  switch (config.family) {
    case EstimatorFamily::IandI:
      state.core = IandIState{u_guess - config.gamma * omega_r0};
      break;
    case EstimatorFamily::EquivalentP:
      state.core = ProportionalState{omega_r0 - u_guess / config.gamma};
      break;
    case EstimatorFamily::PI:
      if (config.beta > 0.0) {
        state.core = PIState{omega_r0, u_guess / config.beta};
      } else {
        state.core = PIState{omega_r0 - u_guess / config.gamma, 0.0};
      }
      break;
  }
  return state;
}

double estimator_output(const EstimatorState& state, const EstimatorConfig& config, double omega_r) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IandIState>) {
          return s.u_hat_internal + config.gamma * omega_r;
        } else if constexpr (std::is_same_v<T, ProportionalState>) {
          return config.gamma * (omega_r - s.omega_hat_r);
        } else {
          const double eps = omega_r - s.omega_hat_r;
          return config.beta > 0.0 ? config.gamma * eps + config.beta * s.integral_eps : config.gamma * eps;
        }
      },
      state.core);
}

std::optional<double> omega_hat(const EstimatorState& state) {
  if (const auto* p = std::get_if<ProportionalState>(&state.core)) return p->omega_hat_r;
  if (const auto* p = std::get_if<PIState>(&state.core)) return p->omega_hat_r;
  return std::nullopt;
}

double delayed_feedback(EstimatorState& state, double sample) { return state.delay.push(sample); }

EstimatorStep step_iandi(const TurbineParams& params, const CpCurve& curve, EstimatorState state,
                         const Measurement& m, const EstimatorConfig& config) {
  auto& core = core_as<IandIState>(state, "step_iandi");
  const double u_hat = core.u_hat_internal + config.gamma * m.omega_r;
  const double n = params.gear_ratio();
  const double f = feedback_phi(params, curve, state, m.omega_r, u_hat);
  core.u_hat_internal += config.dt * config.gamma * (m.t_g / (n * params.inertia_equivalent()) - f / n);
  return {std::move(state), u_hat};
}

EstimatorStep step_equivalent_p(const TurbineParams& params, const CpCurve& curve, EstimatorState state,
                                const Measurement& m, const EstimatorConfig& config) {
  auto& core = core_as<ProportionalState>(state, "step_equivalent_p");
  const double u_hat = config.gamma * (m.omega_r - core.omega_hat_r);
  const double n = params.gear_ratio();
  const double f = feedback_phi(params, curve, state, m.omega_r, u_hat);
  core.omega_hat_r += config.dt * (f / n - m.t_g / (n * params.inertia_equivalent()));
  return {std::move(state), u_hat};
}

EstimatorStep step_pi(const TurbineParams& params, const CpCurve& curve, EstimatorState state,
                      const Measurement& m, const EstimatorConfig& config) {
  auto& core = core_as<PIState>(state, "step_pi");
  const double eps = m.omega_r - core.omega_hat_r;
  const double u_hat = config.beta > 0.0 ? config.gamma * eps + config.beta * core.integral_eps
                                         : config.gamma * eps;
  const double n = params.gear_ratio();
  const double f = feedback_phi(params, curve, state, m.omega_r, u_hat);
  core.omega_hat_r += config.dt * (f / n - m.t_g / (n * params.inertia_equivalent()));
  core.integral_eps += config.dt * eps;
  return {std::move(state), u_hat};
}

EstimatorStep step_estimator(const TurbineParams& params, const CpCurve& curve, EstimatorState state,
                             const Measurement& m, const EstimatorConfig& config) {
  switch (config.family) {
    case EstimatorFamily::IandI:
      return step_iandi(params, curve, std::move(state), m, config);
    case EstimatorFamily::EquivalentP:
      return step_equivalent_p(params, curve, std::move(state), m, config);
    case EstimatorFamily::PI:
      return step_pi(params, curve, std::move(state), m, config);
  }
  throw std::invalid_argument("unknown estimator family");
}

}  // namespace windest
