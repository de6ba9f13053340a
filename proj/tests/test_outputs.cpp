#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "windest/outputs.hpp"
#include "windest/paper_cases.hpp"
#include "windest/scenario_io.hpp"
#include "windest/text_io.hpp"

using namespace windest;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("windest_test_" + name);
  fs::remove_all(dir);
  return dir;
}

SimTrace short_trace(EstimatorFamily fam) {
  auto setup = default_case_setup();
  setup.dwell = 10.0;
  auto scn = stepwise_scenario(setup, {"t", fam, 40.0, fam == EstimatorFamily::PI ? 10.0 : 0.0, 0.3});
  return run_scenario(scn);
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST_CASE("trace CSV round trip is bit-exact") {
  for (auto fam : {EstimatorFamily::PI, EstimatorFamily::IandI}) {
    const auto trace = short_trace(fam);
    std::stringstream ss;
    write_trace_csv(ss, trace);
    const auto back = read_trace_csv(ss);
    REQUIRE(back.size() == trace.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      const auto& a = back[i];
      const auto& b = trace.records[i];
      REQUIRE(same(a.t, b.t));
      REQUIRE(same(a.u_true, b.u_true));
      REQUIRE(same(a.omega_r, b.omega_r));
      REQUIRE(same(a.omega_hat_r, b.omega_hat_r));
      REQUIRE(same(a.epsilon, b.epsilon));
      REQUIRE(same(a.u_hat, b.u_hat));
      REQUIRE(same(a.t_g, b.t_g));
      REQUIRE(a.clamp_count == b.clamp_count);
    }
  }
}

TEST_CASE("trace CSV rejects malformed input") {
  std::istringstream bad_header("t,u\n0,1\n");
  CHECK_THROWS_AS(read_trace_csv(bad_header), std::invalid_argument);
  std::istringstream short_row("t,u_true,omega_r,omega_hat_r,epsilon,u_hat,t_g,clamp_count\n0,1,2\n");
  CHECK_THROWS_AS(read_trace_csv(short_row), std::invalid_argument);
}

TEST_CASE("nyquist CSV and verdict record") {
  const auto circle = case_study_circle();
  const auto s = analyse_loop(40, 10, 0.3, circle);
  std::stringstream ss;
  write_nyquist_csv(ss, s.response, circle);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "omega,re,im,distance");
  double best = 1e300;
  std::size_t rows = 0;
  while (std::getline(ss, line)) {
    const auto f = text::split(line, ',');
    REQUIRE(f.size() == 4);
    const double re = text::parse_double(f[1]);
    const double im = text::parse_double(f[2]);
    const double d = text::parse_double(f[3]);
    CHECK(d == doctest::Approx(std::hypot(re - circle.center, im)));
    best = std::min(best, d);
    ++rows;
  }
  CHECK(rows == s.response.omega.size());
  CHECK(best == s.result.min_distance);

  const auto j = verdict_json(s.result, circle);
  for (const char* key : {"verdict", "min_distance", "argmin_omega", "k1", "k2", "C", "R", "alpha"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["verdict"] == "ConvergenceCertified");
  CHECK(j["C"].get<double>() == circle.center);

  const auto tail = analyse_loop(40, 0, 0, circle);
  CHECK(verdict_json(tail.result, circle)["argmin_omega"].is_null());
}

TEST_CASE("emitted files") {
  const auto dir = scratch_dir("emit");
  CHECK_THROWS_AS(emit_trace(SimTrace{}, dir, "empty"), std::invalid_argument);

  const auto trace = short_trace(EstimatorFamily::PI);
  emit_trace(trace, dir, "short");
  emit_stability(analyse_loop(100, 200, 0.3, case_study_circle()), dir, "case 3");
  for (const char* f : {"trace.csv", "timeseries.svg", "nyquist.csv", "nyquist.svg", "verdict.json"}) {
    CHECK(fs::exists(dir / f));
  }
  std::ifstream svg(dir / "nyquist.svg");
  std::stringstream content;
  content << svg.rdbuf();
  CHECK(content.str().rfind("<svg", 0) == 0);
  CHECK(content.str().find("<ellipse") != std::string::npos);
  CHECK(content.str().find("NotCertified") != std::string::npos);

  std::ifstream csv(dir / "trace.csv");
  CHECK(read_trace_csv(csv).size() == trace.records.size());
  fs::remove_all(dir);
}

TEST_CASE("scenario files") {
  const auto scn = load_scenario(fs::path(WINDEST_DATA_DIR) / "scenarios" / "case1.json");
  CHECK(scn.wind_profile.size() == 3);
  CHECK(scn.estimator.gamma == 40.0);
  CHECK(scn.estimator.delay == 0.3);
  CHECK(scn.turbine->phi_scale() == case_study_params().phi_scale());
  CHECK(scn.curve->lambda_star() == synthetic_cp_curve().lambda_star());

  const auto again = scenario_from_json(scenario_to_json(scn), ".");
  CHECK(again.duration == scn.duration);
  CHECK(again.estimator.beta == scn.estimator.beta);
  CHECK(again.turbine->phi_scale() == scn.turbine->phi_scale());
  CHECK(again.k2 == scn.k2);

  auto j = scenario_to_json(scn);
  j["colour"] = "blue";
  CHECK_THROWS_AS(scenario_from_json(j, "."), std::invalid_argument);
  j = scenario_to_json(scn);
  j["estimator"]["family"] = "Kalman";
  CHECK_THROWS_AS(scenario_from_json(j, "."), std::invalid_argument);
  j = scenario_to_json(scn);
  j["wind_profile"] = nlohmann::json::array();
  CHECK_THROWS_AS(scenario_from_json(j, "."), std::invalid_argument);
  j = scenario_to_json(scn);
  j["turbine"] = "nrel5mw";
  CHECK(scenario_from_json(j, ".").turbine->inertia_rotor() == nrel5mw_params().inertia_rotor());
  j["duration"] = "long";
  CHECK_THROWS_AS(scenario_from_json(j, "."), std::invalid_argument);
}

TEST_CASE("case report is reproducible") {
  auto setup = default_case_setup();
  setup.dwell = 30.0;
  const auto a = report_json(run_paper_cases(setup));
  const auto b = report_json(run_paper_cases(setup));
  CHECK(a == b);
  CHECK(a["cases"].size() == 8);
  CHECK(a["margins"]["delay"]["discrepancy"] == true);
}
