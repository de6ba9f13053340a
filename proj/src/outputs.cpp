#include "windest/outputs.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "windest/svg.hpp"
#include "windest/text_io.hpp"

namespace windest {

namespace {

constexpr std::string_view kTraceHeader = "t,u_true,omega_r,omega_hat_r,epsilon,u_hat,t_g,clamp_count";

}  // namespace

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << text::format_double(r.t) << ',' << text::format_double(r.u_true) << ','
        << text::format_double(r.omega_r) << ',' << text::format_double(r.omega_hat_r) << ','
        << text::format_double(r.epsilon) << ',' << text::format_double(r.u_hat) << ','
        << text::format_double(r.t_g) << ',' << r.clamp_count << '\n';
  }
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || text::trim(line) != kTraceHeader) {
    throw std::invalid_argument("trace CSV: unexpected header");
  }
  std::vector<TraceRecord> records;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    const auto f = text::split(text::trim(line), ',');
    if (f.size() != 8) throw std::invalid_argument("trace CSV: expected 8 columns");
    TraceRecord r;
    r.t = text::parse_double(f[0]);
    r.u_true = text::parse_double(f[1]);
    r.omega_r = text::parse_double(f[2]);
    r.omega_hat_r = text::parse_double(f[3]);
    r.epsilon = text::parse_double(f[4]);
    r.u_hat = text::parse_double(f[5]);
    r.t_g = text::parse_double(f[6]);
    r.clamp_count = std::stoull(std::string(f[7]));
    records.push_back(r);
  }
  return records;
}

void write_nyquist_csv(std::ostream& out, const FrequencyResponse& fr, const CircleSpec& circle) {
  out << "omega,re,im,distance\n";
  const std::complex<double> c(circle.center, 0.0);
  for (std::size_t i = 0; i < fr.omega.size(); ++i) {
    out << text::format_double(fr.omega[i]) << ',' << text::format_double(fr.g[i].real()) << ','
        << text::format_double(fr.g[i].imag()) << ',' << text::format_double(std::abs(fr.g[i] - c)) << '\n';
  }
}

nlohmann::json verdict_json(const DistanceResult& result, const CircleSpec& circle) {
  nlohmann::json j;
  j["verdict"] = std::string(to_string(result.verdict));
  j["min_distance"] = result.min_distance;
  // JSON has no infinity; the w -> inf limit is written as null.
  j["argmin_omega"] = std::isfinite(result.argmin_omega) ? nlohmann::json(result.argmin_omega) : nlohmann::json();
  j["k1"] = circle.k1;
  j["k2"] = circle.k2;
  j["C"] = circle.center;
  j["R"] = circle.radius;
  j["alpha"] = circle.alpha;
  return j;
}

std::string timeseries_svg(const SimTrace& trace, const std::string& title) {
  svg::Figure fig(900, 300);
  svg::Series u, u_hat, w, w_hat;
  for (const auto& r : trace.records) {
    u.x.push_back(r.t);
    u.y.push_back(r.u_true);
    u_hat.x.push_back(r.t);
    u_hat.y.push_back(r.u_hat);
    w.x.push_back(r.t);
    w.y.push_back(r.omega_r);
    w_hat.x.push_back(r.t);
    w_hat.y.push_back(r.omega_hat_r);
  }
  u.color = "#000000";
  u.label = "U";
  u_hat.color = "#1f77b4";
  u_hat.label = "U estimate";
  u_hat.dashed = true;
  w.color = "#000000";
  w.label = "rotor speed";
  w_hat.color = "#ff7f0e";
  w_hat.label = "rotor speed estimate";
  w_hat.dashed = true;

  auto& top = fig.add_panel();
  top.title = title + ": wind speed";
  top.x_label = "t [s]";
  top.y_label = "m/s";
  // Keep a diverging estimate from flattening the plot.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : u.y) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  top.y_lo = std::max(-5.0, lo - 6.0);
  top.y_hi = hi + 6.0;
  top.series = {u, u_hat};

  auto& bottom = fig.add_panel();
  bottom.title = title + ": rotor speed";
  bottom.x_label = "t [s]";
  bottom.y_label = "rad/s";
  bottom.series = {w, w_hat};
  double wl = std::numeric_limits<double>::infinity();
  double wh = -wl;
  for (double v : w.y) {
    wl = std::min(wl, v);
    wh = std::max(wh, v);
  }
  const double pad = std::max(0.1, 0.5 * (wh - wl));
  bottom.y_lo = wl - pad;
  bottom.y_hi = wh + pad;
  return fig.render();
}

std::string nyquist_svg(const FrequencyResponse& fr, const CircleSpec& circle, const DistanceResult& result,
                        const std::string& title) {
  svg::Figure fig(700, 620);
  auto& p = fig.add_panel();
  p.title = title + ": " + std::string(to_string(result.verdict)) + ", min distance " +
            text::format_double(std::round(result.min_distance * 1000.0) / 1000.0) + ", R " +
            text::format_double(std::round(circle.radius * 1000.0) / 1000.0);
  p.x_label = "Re G(jw)";
  p.y_label = "Im G(jw)";
  p.equal_aspect = true;
  p.x_lo = circle.center - 2.0 * circle.radius - 10.0;
  p.x_hi = std::max(0.35 * std::abs(circle.center), 10.0);
  p.y_lo = -(circle.radius + 0.6 * std::abs(circle.center));
  p.y_hi = circle.radius + 0.6 * std::abs(circle.center);
  svg::Series locus;
  locus.label = "G(jw)";
  for (const auto& g : fr.g) {
    locus.x.push_back(g.real());
    locus.y.push_back(g.imag());
  }
  p.series.push_back(std::move(locus));
  p.circles.push_back({circle.center, 0.0, circle.radius, "#d62728", "forbidden disk"});
  p.markers.emplace_back(circle.center, 0.0);
  return fig.render();
}

FrequencyResponse verdict_response(double gamma, double beta, double delay, const CircleSpec& circle) {
  const auto result = check_loop(gamma, beta, delay, circle);
  double lo = 1e-3;
  double hi = 1e3;
  if (std::isfinite(result.argmin_omega)) {
    while (result.argmin_omega < lo * 1.0000001) lo /= 10.0;
    while (result.argmin_omega > hi * 0.9999999) hi *= 10.0;
  } else {
    hi = 1e6;
  }
  const double per_decade = 4000.0 / 6.0;
  const auto n = static_cast<std::size_t>(std::llround(per_decade * std::log10(hi / lo)));
  return frequency_response(gamma, beta, delay, log_grid(lo, hi, n));
}

StabilityArtifacts analyse_loop(double gamma, double beta, double delay, const CircleSpec& circle) {
  return {verdict_response(gamma, beta, delay, circle), check_loop(gamma, beta, delay, circle), circle};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void emit_stability(const StabilityArtifacts& s, const std::filesystem::path& out_dir, const std::string& title) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "nyquist.csv");
    if (!out) throw std::runtime_error("cannot write " + (out_dir / "nyquist.csv").string());
    write_nyquist_csv(out, s.response, s.circle);
  }
  write_text_file(out_dir / "verdict.json", verdict_json(s.result, s.circle).dump(2) + "\n");
  write_text_file(out_dir / "nyquist.svg", nyquist_svg(s.response, s.circle, s.result, title));
}

void emit_trace(const SimTrace& trace, const std::filesystem::path& out_dir, const std::string& title) {
  if (trace.records.empty()) throw std::invalid_argument("emit: empty trace");
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "trace.csv");
    if (!out) throw std::runtime_error("cannot write " + (out_dir / "trace.csv").string());
    write_trace_csv(out, trace);
  }
  write_text_file(out_dir / "timeseries.svg", timeseries_svg(trace, title));
}

}  // namespace windest
