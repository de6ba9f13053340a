#pragma once

#include <span>
#include <string>
#include <vector>

namespace windest::svg {

// Minimal self-contained SVG line charts: linear axes, polylines, circles,
// a legend. Enough for time series and Nyquist loci, nothing more.

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  std::string label;
  bool dashed = false;
};

struct CircleShape {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
  std::string color = "#d62728";
  std::string label;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  // Data window. Auto-fitted to the series when lo == hi.
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
  bool equal_aspect = false;
  std::vector<Series> series;
  std::vector<CircleShape> circles;
  std::vector<std::pair<double, double>> markers;  // plotted as small crosses
};

class Figure {
 public:
  Figure(int width, int panel_height) : width_(width), panel_height_(panel_height) {}

  Panel& add_panel() { return panels_.emplace_back(); }
  std::string render() const;

 private:
  int width_;
  int panel_height_;
  std::vector<Panel> panels_;
};

}  // namespace windest::svg
