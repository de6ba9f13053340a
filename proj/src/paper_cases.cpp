#include "windest/paper_cases.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "windest/text_io.hpp"

namespace windest {

std::vector<CaseDefinition> paper_case_definitions() {
  using F = EstimatorFamily;
  return {
      {"case1", F::PI, 40.0, 10.0, 0.3},  {"case2", F::PI, 100.0, 10.0, 0.3},
      {"case3", F::PI, 100.0, 200.0, 0.3}, {"case4", F::PI, 40.0, 10.0, 0.3},
      {"case5", F::PI, 40.0, 10.0, 0.6},  {"case6", F::PI, 40.0, 10.0, 2.0},
      {"fig4_pi", F::PI, 80.0, 4.0, 0.3}, {"fig4_p", F::EquivalentP, 80.0, 0.0, 0.3},
  };
}

CaseSetup default_case_setup() {
  CaseSetup s;
  s.turbine = std::make_shared<const TurbineParams>(case_study_params());
  s.curve = std::make_shared<const CpCurve>(synthetic_cp_curve());
  return s;
}

std::vector<WindSegment> stepwise_profile(const std::vector<double>& levels, double dwell) {
  std::vector<WindSegment> profile;
  profile.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    profile.push_back({static_cast<double>(i) * dwell, levels[i]});
  }
  return profile;
}

Scenario stepwise_scenario(const CaseSetup& setup, const CaseDefinition& def) {
  Scenario scn;
  scn.wind_profile = stepwise_profile(setup.wind_levels, setup.dwell);
  scn.duration = setup.dwell * static_cast<double>(setup.wind_levels.size());
  scn.dt = setup.dt;
  scn.turbine = setup.turbine;
  scn.curve = setup.curve;
  scn.estimator = {def.family, def.gamma, def.beta, def.delay, setup.dt};
  scn.initial.u_guess = setup.u_guess;
  scn.k1 = setup.circle.k1;
  scn.k2 = setup.circle.k2;
  return scn;
}

MarginReport compute_margins(const CircleSpec& circle) {
  MarginReport m;
  m.gamma = 40.0;
  m.delay = 0.3;
  m.beta = 10.0;
  m.max_beta = max_stable_beta(m.gamma, m.delay, circle, 100.0);
  m.max_delay = max_stable_delay(m.gamma, m.beta, circle, 2.0);
  m.delay_discrepancy = std::abs(m.max_delay - m.quoted_max_delay) > 0.05 * m.quoted_max_delay;
  return m;
}

PaperReport run_paper_cases(const CaseSetup& setup) {
  PaperReport report;
  report.circle = setup.circle;
  report.classifier = setup.classifier;
  report.wind_levels = setup.wind_levels;
  report.dwell = setup.dwell;
  for (double u : setup.wind_levels) {
    const double w = steady_state_rotor_speed(*setup.turbine, *setup.curve, u);
    report.loop_gains.push_back(estimator_loop_gain(*setup.turbine, *setup.curve, w, u));
  }

  const auto defs = paper_case_definitions();
  std::vector<Scenario> scenarios;
  scenarios.reserve(defs.size());
  for (const auto& d : defs) scenarios.push_back(stepwise_scenario(setup, d));
  auto traces = run_batch(scenarios);

  for (std::size_t i = 0; i < defs.size(); ++i) {
    CaseReport c;
    c.definition = defs[i];
    c.distance = check_loop(defs[i].gamma, defs[i].beta, defs[i].delay, setup.circle);
    c.assessment = classify_trace(traces[i], scenarios[i].wind_profile, scenarios[i].duration, setup.classifier);
    c.concordant = !c.distance.certified() || c.assessment.overall == SegmentLabel::Converged;
    c.clamp_count = traces[i].records.empty() ? 0 : traces[i].records.back().clamp_count;
    c.stop_time = traces[i].stop_time;
    c.trace = std::move(traces[i]);
    report.cases.push_back(std::move(c));
  }
  report.margins = compute_margins(setup.circle);
  return report;
}

const CaseReport& find_case(const PaperReport& report, const std::string& name) {
  for (const auto& c : report.cases) {
    if (c.definition.name == name) return c;
  }
  throw std::out_of_range("no case named " + name);
}

nlohmann::json report_json(const PaperReport& report) {
  using nlohmann::json;
  json j;
  j["circle"] = {{"k1", report.circle.k1},
                 {"k2", report.circle.k2},
                 {"C", report.circle.center},
                 {"R", report.circle.radius},
                 {"alpha", report.circle.alpha}};
  j["classifier"] = {{"settle_fraction", report.classifier.settle_fraction},
                     {"tolerance", report.classifier.tolerance},
                     {"growth_windows", report.classifier.growth_windows}};
  j["wind_levels"] = report.wind_levels;
  j["dwell"] = report.dwell;
  j["loop_gains"] = report.loop_gains;
  json cases = json::array();
  for (const auto& c : report.cases) {
    json segs = json::array();
    for (const auto& s : c.assessment.segments) {
      segs.push_back({{"t_start", s.t_start},
                      {"t_end", s.t_end},
                      {"u", s.u},
                      {"label", std::string(to_string(s.label))},
                      {"settle_error", std::isfinite(s.settle_error) ? json(s.settle_error) : json()}});
    }
    cases.push_back({
        {"name", c.definition.name},
        {"family", std::string(to_string(c.definition.family))},
        {"gamma", c.definition.gamma},
        {"beta", c.definition.beta},
        {"delay", c.definition.delay},
        {"verdict", std::string(to_string(c.distance.verdict))},
        {"min_distance", c.distance.min_distance},
        {"argmin_omega", std::isfinite(c.distance.argmin_omega) ? json(c.distance.argmin_omega) : json()},
        {"simulation", std::string(to_string(c.assessment.overall))},
        {"concordant", c.concordant},
        {"clamp_count", c.clamp_count},
        {"stop_time", c.stop_time ? json(*c.stop_time) : json()},
        {"segments", segs},
    });
  }
  j["cases"] = cases;
  const auto& m = report.margins;
  j["margins"] = {{"beta", {{"gamma", m.gamma}, {"delay", m.delay}, {"max_beta", m.max_beta},
                            {"quoted", m.quoted_max_beta}}},
                  {"delay", {{"gamma", m.gamma}, {"beta", m.beta}, {"max_delay", m.max_delay},
                             {"quoted", m.quoted_max_delay}, {"discrepancy", m.delay_discrepancy}}}};
  return j;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

std::string report_text(const PaperReport& report) {
  std::ostringstream os;
  os << "circle: k1=" << text::format_double(report.circle.k1) << " k2=" << text::format_double(report.circle.k2)
     << " C=" << fixed(report.circle.center, 4) << " R=" << fixed(report.circle.radius, 4) << '\n';
  os << "classifier: trailing " << fixed(100.0 * report.classifier.settle_fraction, 0)
     << "% of each segment, converged below " << text::format_double(report.classifier.tolerance)
     << " m/s, diverged on " << report.classifier.growth_windows << " growing windows\n";
  os << "wind levels:";
  for (std::size_t i = 0; i < report.wind_levels.size(); ++i) {
    os << ' ' << text::format_double(report.wind_levels[i]) << " m/s (loop gain " << fixed(report.loop_gains[i], 4)
       << ')';
  }
  os << ", " << text::format_double(report.dwell) << " s each\n\n";

  os << std::left << std::setw(10) << "case" << std::setw(13) << "family" << std::right << std::setw(7) << "gamma"
     << std::setw(7) << "beta" << std::setw(7) << "delay" << "  " << std::left << std::setw(22) << "verdict"
     << std::right << std::setw(9) << "min_dist" << "  " << std::left << std::setw(13) << "simulation"
     << "concordant\n";
  for (const auto& c : report.cases) {
    const auto& d = c.definition;
    os << std::left << std::setw(10) << d.name << std::setw(13) << to_string(d.family) << std::right
       << std::setw(7) << fixed(d.gamma, 1) << std::setw(7) << fixed(d.beta, 1) << std::setw(7) << fixed(d.delay, 2)
       << "  " << std::left << std::setw(22) << to_string(c.distance.verdict) << std::right << std::setw(9)
       << fixed(c.distance.min_distance, 3) << "  " << std::left << std::setw(13) << to_string(c.assessment.overall)
       << (c.concordant ? "yes" : "NO") << '\n';
  }
  const auto& m = report.margins;
  os << "\nmax beta (gamma=" << text::format_double(m.gamma) << ", T=" << text::format_double(m.delay)
     << "): " << fixed(m.max_beta, 3) << " (quoted " << text::format_double(m.quoted_max_beta) << ")\n";
  os << "max delay (gamma=" << text::format_double(m.gamma) << ", beta=" << text::format_double(m.beta)
     << "): " << fixed(m.max_delay, 3) << " s (quoted " << text::format_double(m.quoted_max_delay) << " s"
     << (m.delay_discrepancy ? ", DISCREPANCY" : "") << ")\n";
  return os.str();
}

}  // namespace windest
