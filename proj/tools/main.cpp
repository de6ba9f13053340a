// windest: command-line front end for the estimator simulations and the
// circle-criterion checks.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "windest/errors.hpp"
#include "windest/outputs.hpp"
#include "windest/paper_cases.hpp"
#include "windest/scenario_io.hpp"
#include "windest/stability.hpp"
#include "windest/text_io.hpp"

namespace fs = std::filesystem;
using namespace windest;

namespace {

constexpr int kExitNotCertified = 2;

void print_verdict(const DistanceResult& r, const CircleSpec& c) {
  std::cout << "verdict: " << to_string(r.verdict) << "\n"
            << "min distance: " << r.min_distance << " (radius " << c.radius << ", center " << c.center << ")\n"
            << "argmin omega: " << r.argmin_omega << " rad/s\n";
}

int cmd_simulate(const fs::path& scenario_file, const fs::path& out, bool require_certified) {
  const auto scn = load_scenario(scenario_file);
  const auto trace = run_scenario(scn);
  const auto assessment = classify_trace(trace, scn.wind_profile, scn.duration);
  const auto circle = circle_from_sector(scn.k1, scn.k2);
  const auto& e = scn.estimator;
  const auto stab = analyse_loop(e.gamma, e.beta, e.delay, circle);

  const std::string title = std::string(to_string(e.family)) + " gamma=" + text::format_double(e.gamma) +
                            " beta=" + text::format_double(e.beta) + " T=" + text::format_double(e.delay);
  emit_trace(trace, out, title);
  emit_stability(stab, out, title);

  nlohmann::json summary;
  summary["simulation"] = std::string(to_string(assessment.overall));
  summary["verdict"] = std::string(to_string(stab.result.verdict));
  summary["min_distance"] = stab.result.min_distance;
  summary["diverged"] = trace.diverged;
  summary["stop_time"] = trace.stop_time ? nlohmann::json(*trace.stop_time) : nlohmann::json();
  summary["clamp_count"] = trace.records.back().clamp_count;
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : assessment.segments) {
    segs.push_back({{"t_start", s.t_start}, {"u", s.u}, {"label", std::string(to_string(s.label))}});
  }
  summary["segments"] = segs;
  write_text_file(out / "summary.json", summary.dump(2) + "\n");

  std::cout << "simulation: " << to_string(assessment.overall) << " (" << trace.records.size() << " steps";
  if (trace.stop_time) std::cout << ", stopped at t=" << *trace.stop_time;
  std::cout << ")\n";
  print_verdict(stab.result, circle);
  return (require_certified && !stab.result.certified()) ? kExitNotCertified : 0;
}

int cmd_paper_cases(const fs::path& out) {
  const auto report = run_paper_cases();
  fs::create_directories(out);
  for (const auto& c : report.cases) {
    const auto dir = out / c.definition.name;
    emit_trace(c.trace, dir, c.definition.name);
    emit_stability(analyse_loop(c.definition.gamma, c.definition.beta, c.definition.delay, report.circle), dir,
                   c.definition.name);
  }
  const auto text = report_text(report);
  write_text_file(out / "report.json", report_json(report).dump(2) + "\n");
  write_text_file(out / "report.txt", text);
  std::cout << text;
  return 0;
}

int cmd_stability(double gamma, double beta, double delay, double k1, double k2, const fs::path& out,
                  bool require_certified) {
  const auto circle = circle_from_sector(k1, k2);
  const auto stab = analyse_loop(gamma, beta, delay, circle);
  emit_stability(stab, out, "gamma=" + text::format_double(gamma) + " beta=" + text::format_double(beta) +
                                  " T=" + text::format_double(delay));
  print_verdict(stab.result, circle);
  return (require_certified && !stab.result.certified()) ? kExitNotCertified : 0;
}

int cmd_margins(double gamma, std::optional<double> delay, std::optional<double> beta, double k1, double k2,
                double upper) {
  const auto circle = circle_from_sector(k1, k2);
  if (delay) {
    const double b = max_stable_beta(gamma, *delay, circle, upper > 0.0 ? upper : 100.0);
    std::cout << "max beta: " << b << " (gamma=" << gamma << ", T=" << *delay << ")\n";
  } else {
    const double t = max_stable_delay(gamma, *beta, circle, upper > 0.0 ? upper : 2.0);
    std::cout << "max delay: " << t << " s (gamma=" << gamma << ", beta=" << *beta << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotor effective wind speed estimators and their circle-criterion certificates"};
  app.require_subcommand(1);

  bool require_certified = false;
  app.add_flag("--require-certified", require_certified, "Exit with status 2 when the loop is not certified");

  fs::path scenario_file, sim_out;
  auto* sim = app.add_subcommand("simulate", "Run one scenario file");
  sim->add_option("--scenario", scenario_file, "Scenario JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", sim_out, "Output directory")->required();
  sim->add_flag("--require-certified", require_certified, "Exit with status 2 when the loop is not certified");

  fs::path cases_out;
  auto* cases = app.add_subcommand("paper-cases", "Run the stepwise-wind case studies");
  cases->add_option("--out", cases_out, "Output directory")->required();

  double gamma = 0.0, beta = 0.0, delay = 0.0;
  double k1 = kCaseStudyK1, k2 = kCaseStudyK2;
  fs::path stab_out;
  auto* stab = app.add_subcommand("stability", "Circle-criterion check for one gain/delay setting");
  stab->add_option("--gamma", gamma)->required();
  stab->add_option("--beta", beta)->required();
  stab->add_option("--delay", delay)->required();
  stab->add_option("--k1", k1, "Lower sector slope")->capture_default_str();
  stab->add_option("--k2", k2, "Upper sector slope")->capture_default_str();
  stab->add_option("--out", stab_out, "Output directory")->required();
  stab->add_flag("--require-certified", require_certified, "Exit with status 2 when the loop is not certified");

  double m_gamma = 0.0, m_upper = 0.0;
  std::optional<double> m_delay, m_beta;
  double m_k1 = kCaseStudyK1, m_k2 = kCaseStudyK2;
  auto* margins = app.add_subcommand("margins", "Largest certified beta (given T) or delay (given beta)");
  margins->add_option("--gamma", m_gamma)->required();
  auto* o_delay = margins->add_option("--delay", m_delay, "Fixed delay; search beta");
  auto* o_beta = margins->add_option("--beta", m_beta, "Fixed beta; search the delay");
  o_delay->excludes(o_beta);
  margins->add_option("--k1", m_k1)->capture_default_str();
  margins->add_option("--k2", m_k2)->capture_default_str();
  margins->add_option("--upper", m_upper, "Upper end of the search bracket (default 100 for beta, 2 s for delay)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(scenario_file, sim_out, require_certified);
    if (*cases) return cmd_paper_cases(cases_out);
    if (*stab) return cmd_stability(gamma, beta, delay, k1, k2, stab_out, require_certified);
    if (*margins) {
      if (!m_delay && !m_beta) {
        std::cerr << "margins: one of --delay or --beta is required\n";
        return 1;
      }
      return cmd_margins(m_gamma, m_delay, m_beta, m_k1, m_k2, m_upper);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
