#include "windest/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace windest::svg {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 46.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

void fit_range(double& lo, double& hi, bool x_axis, const Panel& p) {
  if (lo != hi) return;
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  for (const auto& s : p.series) {
    for (double v : x_axis ? s.x : s.y) {
      if (std::isfinite(v)) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
    }
  }
  if (!std::isfinite(mn)) {
    mn = 0.0;
    mx = 1.0;
  }
  if (mx == mn) {
    mn -= 0.5;
    mx += 0.5;
  }
  const double pad = x_axis ? 0.0 : 0.05 * (mx - mn);
  lo = mn - pad;
  hi = mx + pad;
}

}  // namespace

std::string Figure::render() const {
  const int height = panel_height_ * static_cast<int>(std::max<std::size_t>(panels_.size(), 1));
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width_ << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t pi = 0; pi < panels_.size(); ++pi) {
    Panel p = panels_[pi];
    fit_range(p.x_lo, p.x_hi, true, p);
    fit_range(p.y_lo, p.y_hi, false, p);

    const double top = static_cast<double>(pi) * panel_height_;
    const double px0 = kMarginLeft;
    const double py0 = top + kMarginTop;
    const double pw = width_ - kMarginLeft - kMarginRight;
    const double ph = panel_height_ - kMarginTop - kMarginBottom;
    if (p.equal_aspect) {
      // Grow whichever axis is short so one data unit is square.
      const double sx = (p.x_hi - p.x_lo) / pw;
      const double sy = (p.y_hi - p.y_lo) / ph;
      if (sx > sy) {
        const double mid = 0.5 * (p.y_lo + p.y_hi);
        p.y_lo = mid - 0.5 * sx * ph;
        p.y_hi = mid + 0.5 * sx * ph;
      } else {
        const double mid = 0.5 * (p.x_lo + p.x_hi);
        p.x_lo = mid - 0.5 * sy * pw;
        p.x_hi = mid + 0.5 * sy * pw;
      }
    }
    const auto X = [&](double x) { return px0 + (x - p.x_lo) / (p.x_hi - p.x_lo) * pw; };
    const auto Y = [&](double y) { return py0 + ph - (y - p.y_lo) / (p.y_hi - p.y_lo) * ph; };
    const std::string clip = "clip" + std::to_string(pi);

    out << "<clipPath id=\"" << clip << "\"><rect x=\"" << num(px0) << "\" y=\"" << num(py0) << "\" width=\""
        << num(pw) << "\" height=\"" << num(ph) << "\"/></clipPath>\n";
    out << "<rect x=\"" << num(px0) << "\" y=\"" << num(py0) << "\" width=\"" << num(pw) << "\" height=\""
        << num(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << num(px0 + pw / 2) << "\" y=\"" << num(top + 20) << "\" text-anchor=\"middle\""
        << " font-size=\"14\">" << escape(p.title) << "</text>\n";
    out << "<text x=\"" << num(px0 + pw / 2) << "\" y=\"" << num(py0 + ph + 36) << "\" text-anchor=\"middle\">"
        << escape(p.x_label) << "</text>\n";
    out << "<text transform=\"translate(" << num(18) << ',' << num(py0 + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(p.y_label) << "</text>\n";

    const double xs = nice_step(p.x_hi - p.x_lo);
    for (double v = std::ceil(p.x_lo / xs) * xs; v <= p.x_hi + 1e-9 * xs; v += xs) {
      out << "<line x1=\"" << num(X(v)) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(X(v)) << "\" y2=\""
          << num(py0 + ph) << "\" stroke=\"#eee\"/>\n";
      out << "<text x=\"" << num(X(v)) << "\" y=\"" << num(py0 + ph + 16) << "\" text-anchor=\"middle\">"
          << tick_label(v) << "</text>\n";
    }
    const double ys = nice_step(p.y_hi - p.y_lo);
    for (double v = std::ceil(p.y_lo / ys) * ys; v <= p.y_hi + 1e-9 * ys; v += ys) {
      out << "<line x1=\"" << num(px0) << "\" y1=\"" << num(Y(v)) << "\" x2=\"" << num(px0 + pw) << "\" y2=\""
          << num(Y(v)) << "\" stroke=\"#eee\"/>\n";
      out << "<text x=\"" << num(px0 - 6) << "\" y=\"" << num(Y(v) + 4) << "\" text-anchor=\"end\">"
          << tick_label(v) << "</text>\n";
    }

    out << "<g clip-path=\"url(#" << clip << ")\">\n";
    for (const auto& c : p.circles) {
      const double rx = c.r / (p.x_hi - p.x_lo) * pw;
      const double ry = c.r / (p.y_hi - p.y_lo) * ph;
      out << "<ellipse cx=\"" << num(X(c.cx)) << "\" cy=\"" << num(Y(c.cy)) << "\" rx=\"" << num(rx)
          << "\" ry=\"" << num(ry) << "\" fill=\"" << c.color << "\" fill-opacity=\"0.12\" stroke=\"" << c.color
          << "\"/>\n";
    }
    // Points far outside the window are dropped; they only break the line.
    const double x_guard = 4.0 * (p.x_hi - p.x_lo);
    const double y_guard = 4.0 * (p.y_hi - p.y_lo);
    for (const auto& s : p.series) {
      std::string pts;
      const auto flush = [&] {
        if (!pts.empty()) {
          out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.3\""
              << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << pts << "\"/>\n";
          pts.clear();
        }
      };
      const std::size_t n = std::min(s.x.size(), s.y.size());
      // Thin long series to roughly two points per horizontal pixel.
      const std::size_t stride = std::max<std::size_t>(1, n / static_cast<std::size_t>(2 * pw));
      for (std::size_t i = 0; i < n; i += stride) {
        const double x = s.x[i];
        const double y = s.y[i];
        const bool keep = std::isfinite(x) && std::isfinite(y) && x > p.x_lo - x_guard && x < p.x_hi + x_guard &&
                          y > p.y_lo - y_guard && y < p.y_hi + y_guard;
        if (!keep) {
          flush();
          continue;
        }
        pts += num(X(x)) + ',' + num(Y(y)) + ' ';
      }
      flush();
    }
    for (const auto& [mx, my] : p.markers) {
      out << "<path d=\"M" << num(X(mx) - 4) << ' ' << num(Y(my) - 4) << " l8 8 m-8 0 l8 -8\" stroke=\"#000\"/>\n";
    }
    out << "</g>\n";

    double ly = py0 + 14;
    for (const auto& s : p.series) {
      if (s.label.empty()) continue;
      out << "<line x1=\"" << num(px0 + pw - 150) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(px0 + pw - 126)
          << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
          << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
      out << "<text x=\"" << num(px0 + pw - 120) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
      ly += 16;
    }
    for (const auto& c : p.circles) {
      if (c.label.empty()) continue;
      out << "<text x=\"" << num(px0 + pw - 150) << "\" y=\"" << num(ly) << "\" fill=\"" << c.color << "\">"
          << escape(c.label) << "</text>\n";
      ly += 16;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace windest::svg
