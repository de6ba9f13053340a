#include "windest/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#include "windest/errors.hpp"
#include "windest/text_io.hpp"

namespace windest {

namespace {

std::size_t step_count(double duration, double dt) {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

int severity(SegmentLabel l) {
  switch (l) {
    case SegmentLabel::Converged:
      return 0;
    case SegmentLabel::Oscillatory:
      return 1;
    case SegmentLabel::NotReached:
      return 2;
    case SegmentLabel::Diverged:
      return 3;
  }
  return 3;
}

}  // namespace

void validate(const Scenario& scn) {
  if (scn.wind_profile.empty()) throw std::invalid_argument("scenario: empty wind schedule");
  if (!scn.turbine || !scn.curve) throw std::invalid_argument("scenario: turbine and C_p curve are required");
  if (!(scn.duration > 0.0) || !(scn.dt > 0.0)) {
    throw std::invalid_argument("scenario: duration and dt must be positive");
  }
  const double steps = scn.duration / scn.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
    throw std::invalid_argument("scenario: duration must be an integer number of steps");
  }
  if (scn.wind_profile.front().t_start != 0.0) {
    throw std::invalid_argument("scenario: first wind segment must start at t=0");
  }
  for (std::size_t i = 0; i < scn.wind_profile.size(); ++i) {
    const auto& seg = scn.wind_profile[i];
    if (!(seg.u > 0.0)) throw std::invalid_argument("scenario: wind speeds must be positive");
    if (i > 0 && !(seg.t_start > scn.wind_profile[i - 1].t_start)) {
      throw std::invalid_argument("scenario: wind segments must be time-ordered");
    }
    if (!(seg.t_start < scn.duration)) throw std::invalid_argument("scenario: wind segment starts after the end");
  }
  if (scn.estimator.dt != scn.dt) {
    throw std::invalid_argument("scenario: estimator sample time must equal the simulation step");
  }
  validate(scn.estimator);
  if (scn.controller_gain && !(*scn.controller_gain > 0.0)) {
    throw std::invalid_argument("scenario: controller gain must be positive");
  }
  if (scn.initial.omega_r && !(*scn.initial.omega_r >= scn.turbine->omega_r_min())) {
    throw std::invalid_argument("scenario: initial rotor speed below omega_r_min");
  }
  if (!(scn.initial.u_guess > 0.0)) throw std::invalid_argument("scenario: initial wind guess must be positive");
  circle_from_sector(scn.k1, scn.k2);
}

double wind_at(std::span<const WindSegment> profile, double t) {
  auto it = std::upper_bound(profile.begin(), profile.end(), t,
                             [](double x, const WindSegment& s) { return x < s.t_start; });
  if (it == profile.begin()) return profile.front().u;
  return std::prev(it)->u;
}

SimTrace run_scenario(const Scenario& scn) {
  validate(scn);
  const auto& params = *scn.turbine;
  const auto& curve = *scn.curve;
  const double gain = scn.controller_gain.value_or(optimal_torque_gain(params, curve));
  const std::size_t n = step_count(scn.duration, scn.dt);
  const double n_gear = params.gear_ratio();

  PlantState plant{scn.initial.omega_r.value_or(
                       steady_state_rotor_speed(params, curve, scn.wind_profile.front().u)),
                   0.0};
  auto est = init_estimator(scn.estimator, plant.omega_r, scn.initial.u_guess);

  SimTrace trace;
  trace.dt = scn.dt;
  trace.records.reserve(n + 1);
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * scn.dt;
    // Half-step offset keeps a segment boundary on the grid inside the new segment.
    const double u = wind_at(scn.wind_profile, t + 0.5 * scn.dt);
    const double t_g = torque_controller(gain, n_gear * plant.omega_r);
    const auto w_hat = omega_hat(est);
    auto step = step_estimator(params, curve, std::move(est), {plant.omega_r, t_g}, scn.estimator);
    est = std::move(step.state);

    TraceRecord rec;
    rec.t = t;
    rec.u_true = u;
    rec.omega_r = plant.omega_r;
    rec.omega_hat_r = w_hat.value_or(std::numeric_limits<double>::quiet_NaN());
    rec.epsilon = w_hat ? plant.omega_r - *w_hat : std::numeric_limits<double>::quiet_NaN();
    rec.u_hat = step.u_hat;
    rec.t_g = t_g;
    rec.clamp_count = est.clamp_count;
    trace.records.push_back(rec);

    if (!std::isfinite(step.u_hat) || std::abs(step.u_hat) > kDivergenceGuard) {
      trace.diverged = true;
      trace.stop_time = t;
      break;
    }
    if (k == n) break;
    try {
      plant = step_plant(params, curve, plant, t_g, u, scn.dt);
    } catch (const EnvelopeError& e) {
      throw EnvelopeError("plant left its envelope at t=" + text::format_double(t) + ": " + e.what());
    }
  }
  return trace;
}

std::vector<SimTrace> run_batch(std::span<const Scenario> scenarios) {
  std::vector<SimTrace> out(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  const auto count = static_cast<std::ptrdiff_t>(scenarios.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[i] = run_scenario(scenarios[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace reference {

std::vector<SimTrace> run_batch(std::span<const Scenario> scenarios) {
  std::vector<SimTrace> out;
  out.reserve(scenarios.size());
  for (const auto& s : scenarios) out.push_back(run_scenario(s));
  return out;
}

}  // namespace reference

std::string_view to_string(SegmentLabel label) {
  switch (label) {
    case SegmentLabel::Converged:
      return "converged";
    case SegmentLabel::Oscillatory:
      return "oscillatory";
    case SegmentLabel::Diverged:
      return "diverged";
    case SegmentLabel::NotReached:
      return "not_reached";
  }
  return "unknown";
}

TraceAssessment classify_trace(const SimTrace& trace, std::span<const WindSegment> profile, double duration,
                               const ClassifierSettings& settings) {
  if (trace.records.empty()) throw std::invalid_argument("classify: empty trace");
  if (profile.empty()) throw std::invalid_argument("classify: empty wind schedule");
  if (!(settings.settle_fraction > 0.0) || settings.settle_fraction * settings.growth_windows > 1.0) {
    throw std::invalid_argument("classify: windows must fit inside a segment");
  }

  TraceAssessment out;
  const auto& rec = trace.records;
  const double dt = trace.dt;
  for (std::size_t s = 0; s < profile.size(); ++s) {
    SegmentAssessment seg;
    seg.t_start = profile[s].t_start;
    seg.t_end = s + 1 < profile.size() ? profile[s + 1].t_start : duration;
    seg.u = profile[s].u;

    // Records with t in [t_start, t_end); the final segment also owns t_end.
    const auto first = static_cast<std::size_t>(std::llround(seg.t_start / dt));
    const bool last_segment = s + 1 == profile.size();
    const auto end_planned = static_cast<std::size_t>(std::llround(seg.t_end / dt)) + (last_segment ? 1 : 0);
    const std::size_t planned = end_planned - first;
    const auto window = static_cast<std::size_t>(std::floor(settings.settle_fraction * static_cast<double>(planned)));

    if (first >= rec.size()) {
      seg.label = SegmentLabel::NotReached;
    } else if (end_planned > rec.size()) {
      seg.label = trace.diverged ? SegmentLabel::Diverged : SegmentLabel::NotReached;
    } else if (window == 0) {
      throw std::invalid_argument("classify: wind segment shorter than one classification window");
    } else {
      double err = 0.0;
      for (std::size_t i = end_planned - window; i < end_planned; ++i) {
        err = std::max(err, std::abs(rec[i].u_hat - seg.u));
      }
      seg.settle_error = err;
      for (std::size_t w = settings.growth_windows; w > 0; --w) {
        const std::size_t lo = end_planned - w * window;
        double mn = rec[lo].u_hat;
        double mx = rec[lo].u_hat;
        for (std::size_t i = lo; i < lo + window; ++i) {
          mn = std::min(mn, rec[i].u_hat);
          mx = std::max(mx, rec[i].u_hat);
        }
        seg.trailing_swing.push_back(mx - mn);
      }
      if (err < settings.tolerance) {
        seg.label = SegmentLabel::Converged;
      } else {
        const bool growing = std::adjacent_find(seg.trailing_swing.begin(), seg.trailing_swing.end(),
                                                std::greater_equal<>()) == seg.trailing_swing.end();
        seg.label = growing ? SegmentLabel::Diverged : SegmentLabel::Oscillatory;
      }
    }
    out.segments.push_back(std::move(seg));
  }

  out.overall = SegmentLabel::Converged;
  for (const auto& seg : out.segments) {
    if (severity(seg.label) > severity(out.overall)) out.overall = seg.label;
  }
  if (out.overall == SegmentLabel::NotReached) out.overall = SegmentLabel::Diverged;
  if (trace.diverged) out.overall = SegmentLabel::Diverged;
  return out;
}

}  // namespace windest
