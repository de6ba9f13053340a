#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "windest/harness.hpp"
#include "windest/stability.hpp"

namespace windest {

struct CaseDefinition {
  std::string name;
  EstimatorFamily family = EstimatorFamily::PI;
  double gamma = 0.0;
  double beta = 0.0;
  double delay = 0.0;
};

/// Cases 1-6 followed by the PI-versus-P comparison
/// (gamma 80, T 0.3, beta 4 against beta 0).
std::vector<CaseDefinition> paper_case_definitions();

struct CaseSetup {
  std::shared_ptr<const TurbineParams> turbine;
  std::shared_ptr<const CpCurve> curve;
  std::vector<double> wind_levels{5.0, 7.0, 9.0};  // m/s
  double dwell = 150.0;                            // s per level
  double dt = 0.01;
  double u_guess = 8.0;
  CircleSpec circle = case_study_circle();
  ClassifierSettings classifier;
};

/// Case-study plant and the synthetic C_p table.
CaseSetup default_case_setup();

std::vector<WindSegment> stepwise_profile(const std::vector<double>& levels, double dwell);
Scenario stepwise_scenario(const CaseSetup& setup, const CaseDefinition& def);

struct CaseReport {
  CaseDefinition definition;
  DistanceResult distance;
  TraceAssessment assessment;
  // A certificate is only contradicted by a run that fails to converge.
  bool concordant = true;
  std::uint64_t clamp_count = 0;
  std::optional<double> stop_time;
  SimTrace trace;
};

struct MarginReport {
  double gamma = 0.0;
  double delay = 0.0;  // for the beta margin
  double beta = 0.0;   // for the delay margin
  double max_beta = 0.0;
  double max_delay = 0.0;
  double quoted_max_beta = 14.0;   // "beta < 14 can be selected"
  double quoted_max_delay = 31.4;  // s, as printed
  bool delay_discrepancy = false;  // computed and quoted delay margins differ by more than 5 %
};

MarginReport compute_margins(const CircleSpec& circle);

struct PaperReport {
  CircleSpec circle;
  ClassifierSettings classifier;
  std::vector<double> wind_levels;
  double dwell = 0.0;
  std::vector<double> loop_gains;  // (1/N) dPhi/dU at each wind level on the tracking curve
  std::vector<CaseReport> cases;
  MarginReport margins;
};

PaperReport run_paper_cases(const CaseSetup& setup = default_case_setup());

const CaseReport& find_case(const PaperReport& report, const std::string& name);

/// Everything except the traces.
nlohmann::json report_json(const PaperReport& report);
std::string report_text(const PaperReport& report);

}  // namespace windest
