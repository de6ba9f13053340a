#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "windest/harness.hpp"
#include "windest/stability.hpp"

namespace windest {

// t,u_true,omega_r,omega_hat_r,epsilon,u_hat,t_g,clamp_count. Values use the
// shortest round-trip representation, so reading back is bit-exact.
void write_trace_csv(std::ostream& out, const SimTrace& trace);
std::vector<TraceRecord> read_trace_csv(std::istream& in);

// omega,re,im,distance (distance to the circle center).
void write_nyquist_csv(std::ostream& out, const FrequencyResponse& fr, const CircleSpec& circle);

// {verdict, min_distance, argmin_omega, k1, k2, C, R, alpha}
nlohmann::json verdict_json(const DistanceResult& result, const CircleSpec& circle);

std::string timeseries_svg(const SimTrace& trace, const std::string& title);
std::string nyquist_svg(const FrequencyResponse& fr, const CircleSpec& circle, const DistanceResult& result,
                        const std::string& title);

/// Frequency response on the grid used for the verdict, widened like
/// check_loop so the exported locus contains the reported minimum.
FrequencyResponse verdict_response(double gamma, double beta, double delay, const CircleSpec& circle);

struct StabilityArtifacts {
  FrequencyResponse response;
  DistanceResult result;
  CircleSpec circle;
};

StabilityArtifacts analyse_loop(double gamma, double beta, double delay, const CircleSpec& circle);

/// nyquist.csv, verdict.json and nyquist.svg.
void emit_stability(const StabilityArtifacts& s, const std::filesystem::path& out_dir, const std::string& title);

/// trace.csv and timeseries.svg. Throws on an empty trace.
void emit_trace(const SimTrace& trace, const std::filesystem::path& out_dir, const std::string& title);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace windest
