#include "windest/cp_curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "windest/errors.hpp"
#include "windest/text_io.hpp"

namespace windest {

namespace {

constexpr std::size_t kMinNodes = 4;

// Synthetic fixture: exponential blade-element style shape, rescaled so the
// peak sits on the 7.5 node with C_p* = 0.48.
constexpr std::array<std::pair<double, double>, 81> kSyntheticTable = {{
    {2.0, 0.0027865210978096299},
    {2.1, 0.0042100968565865543},
    {2.2, 0.0061073139493897505},
    {2.3, 0.008552166183455957},
    {2.4, 0.011612228935770328},
    {2.5, 0.015346172934715983},
    {2.6, 0.019801929038684031},
    {2.7, 0.025015508062836089},
    {2.8, 0.031010428726111445},
    {2.9, 0.037797675269734758},
    {3.0, 0.045376090760366312},
    {3.1, 0.053733108500931701},
    {3.2, 0.062845728534265968},
    {3.3, 0.072681655762080605},
    {3.4, 0.083200528269232521},
    {3.5, 0.094355177290615835},
    {3.6, 0.10609287272327829},
    {3.7, 0.11835651946845663},
    {3.8, 0.13108577982509739},
    {3.9, 0.14421810552130987},
    {4.0, 0.15768966978945684},
    {4.1, 0.17143619528213219},
    {4.2, 0.18539367775568999},
    {4.3, 0.19949900849880914},
    {4.4, 0.21369050063816639},
    {4.5, 0.22790832588149268},
    {4.6, 0.2420948691115902},
    {4.7, 0.25619500865394063},
    {4.8, 0.27015633011524304},
    {4.9, 0.28392928152096009},
    {5.0, 0.29746727713957738},
    {5.1, 0.31072675692751223},
    {5.2, 0.32366720800620874},
    {5.3, 0.33625115402603656},
    {5.4, 0.34844411770555606},
    {5.5, 0.36021456127785612},
    {5.6, 0.37153380904086397},
    {5.7, 0.38237595570423277},
    {5.8, 0.39271776375684236},
    {5.9, 0.40253855264876387},
    {6.0, 0.41182008219059973},
    {6.1, 0.42054643222091792},
    {6.2, 0.4287038802776566},
    {6.3, 0.43628077872985266},
    {6.4, 0.44326743257945522},
    {6.5, 0.44965597892672515},
    {6.6, 0.45544026890413702},
    {6.7, 0.4606157527201431},
    {6.8, 0.46517936831309531},
    {6.9, 0.46912943399461837},
    {7.0, 0.47246554535854457},
    {7.1, 0.47518847664406205},
    {7.2, 0.47730008666809209},
    {7.3, 0.47880322938037123},
    {7.4, 0.47970166904370592},
    {7.5, 0.47999999999999998},
    {7.6, 0.47970357094869148},
    {7.7, 0.47881841363705691},
    {7.8, 0.47735117584048942},
    {7.9, 0.47530905849448013},
    {8.0, 0.47269975682785037},
    {8.1, 0.46953140533818311},
    {8.2, 0.46581252644477705},
    {8.3, 0.46155198265132591},
    {8.4, 0.45675893204946738},
    {8.5, 0.45144278699498475},
    {8.6, 0.44561317579046811},
    {8.7, 0.43927990721136889},
    {8.8, 0.43245293771638615},
    {8.9, 0.42514234118781047},
    {9.0, 0.41735828105264366},
    {9.1, 0.40911098464088569},
    {9.2, 0.40041071964318908},
    {9.3, 0.39126777253607087},
    {9.4, 0.38169242884890747},
    {9.5, 0.3716949551529895},
    {9.6, 0.36128558265892474},
    {9.7, 0.35047449231457956},
    {9.8, 0.33927180130152779},
    {9.9, 0.32768755083360773},
    {10.0, 0.31573169516662514},
}};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)), slope_(x_.size(), 0.0) {
  if (x_.size() != y_.size()) {
    throw std::invalid_argument("interpolant: knot and value counts differ");
  }
  if (x_.size() < 2) {
    throw std::invalid_argument("interpolant: need at least two knots");
  }
  const std::size_t n = x_.size();
  std::vector<double> h(n - 1);
  std::vector<double> secant(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    if (!(h[k] > 0.0)) {
      throw std::invalid_argument("interpolant: knots must be strictly increasing");
    }
    secant[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  slope_.front() = secant.front();
  slope_.back() = secant.back();
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (secant[k - 1] * secant[k] > 0.0) {
      const double a = (h[k - 1] + 2.0 * h[k]) / (3.0 * (h[k - 1] + h[k]));
      slope_[k] = secant[k - 1] * secant[k] / (a * secant[k] + (1.0 - a) * secant[k - 1]);
    } else {
      slope_[k] = 0.0;
    }
  }
}

std::size_t MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(idx, x_.size() - 2);
}

double MonotoneCubic::value(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  if (t == 0.0) return y_[k];
  if (t == 1.0) return y_[k + 1];
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[k] + h * h10 * slope_[k] + h01 * y_[k + 1] + h * h11 * slope_[k + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  if (t == 0.0) return slope_[k];
  if (t == 1.0) return slope_[k + 1];
  const double t2 = t * t;
  const double d00 = 6.0 * t2 - 6.0 * t;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = -6.0 * t2 + 6.0 * t;
  const double d11 = 3.0 * t2 - 2.0 * t;
  return (d00 * y_[k] + d01 * y_[k + 1]) / h + d10 * slope_[k] + d11 * slope_[k + 1];
}

CpCurve CpCurve::from_table(std::vector<double> lambda, std::vector<double> cp) {
  if (lambda.size() != cp.size()) {
    throw std::invalid_argument("C_p table: lambda and C_p columns differ in length");
  }
  if (lambda.size() < kMinNodes) {
    throw std::invalid_argument("C_p table: at least 4 points are needed for a C1 fit");
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!std::isfinite(lambda[i]) || !std::isfinite(cp[i])) {
      throw std::invalid_argument("C_p table: non-finite entry");
    }
    if (i > 0 && !(lambda[i] > lambda[i - 1])) {
      throw std::invalid_argument("C_p table: lambda must be strictly increasing");
    }
    if (!(cp[i] > 0.0)) {
      throw std::invalid_argument("C_p table: power coefficient must be positive, got " +
                                  text::format_double(cp[i]) + " at lambda=" +
                                  text::format_double(lambda[i]));
    }
  }
  if (!(lambda.front() > 0.0)) {
    throw std::invalid_argument("C_p table: lambda_min must be positive");
  }

  // The interpolant's slope sign on each interval equals the secant sign, so
  // the single-peak pattern is decided on the data: a run of rises followed
  // by a run of falls, both non-empty, no flat intervals.
  int sign_changes = 0;
  int prev = 0;
  for (std::size_t k = 0; k + 1 < cp.size(); ++k) {
    const int s = sign_of(cp[k + 1] - cp[k]);
    if (s == 0) {
      throw std::invalid_argument("C_p table: flat interval, derivative sign is undefined");
    }
    if (k == 0 && s < 0) {
      throw std::invalid_argument("C_p table: curve must rise from lambda_min to an interior peak");
    }
    if (k > 0 && s != prev) ++sign_changes;
    prev = s;
  }
  if (sign_changes != 1 || prev > 0) {
    throw std::invalid_argument("C_p table: derivative must change sign exactly once (single interior peak)");
  }
  return CpCurve(MonotoneCubic(std::move(lambda), std::move(cp)));
}

CpCurve::CpCurve(MonotoneCubic interp) : interp_(std::move(interp)) {
  // Golden-section search for the maximiser.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lambda_min();
  double b = lambda_max();
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = interp_.value(c);
  double fd = interp_.value(d);
  while (b - a > 1e-8) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = interp_.value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = interp_.value(d);
    }
  }

  // Refine on the sign change of the derivative.
  double lo = interp_.derivative(a) > 0.0 ? a : lambda_min();
  double hi = interp_.derivative(b) < 0.0 ? b : lambda_max();
  double star = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    star = 0.5 * (lo + hi);
    const double slope = interp_.derivative(star);
    if (slope == 0.0) break;
    (slope > 0.0 ? lo : hi) = star;
  }
  lambda_star_ = star;
  cp_star_ = interp_.value(star);

  // Largest kappa root below lambda*: march down from the peak until kappa
  // turns non-positive, then bisect the bracketing cell.
  const auto kap = [this](double x) { return 3.0 / x * interp_.value(x) - interp_.derivative(x); };
  constexpr int kScan = 4000;
  const double step = (lambda_star_ - lambda_min()) / kScan;
  lambda_zero_ = lambda_min();
  double upper = lambda_star_;
  for (int i = 1; i <= kScan; ++i) {
    const double x = i == kScan ? lambda_min() : lambda_star_ - i * step;
    if (kap(x) <= 0.0) {
      double l = x;
      double u = upper;
      for (int it = 0; it < 200 && u - l > 1e-15 * u; ++it) {
        const double m = 0.5 * (l + u);
        (kap(m) > 0.0 ? u : l) = m;
      }
      lambda_zero_ = std::abs(kap(l)) < std::abs(kap(u)) ? l : u;
      break;
    }
    upper = x;
  }
}

void CpCurve::check_envelope(double lambda) const {
  if (!contains(lambda)) {
    throw EnvelopeError("tip-speed ratio " + text::format_double(lambda) + " outside [" +
                        text::format_double(lambda_min()) + ", " +
                        text::format_double(lambda_max()) + "]");
  }
}

double CpCurve::cp(double lambda) const {
  check_envelope(lambda);
  return interp_.value(lambda);
}

double CpCurve::cp_prime(double lambda) const {
  check_envelope(lambda);
  return interp_.derivative(lambda);
}

double CpCurve::kappa(double lambda) const {
  check_envelope(lambda);
  return 3.0 / lambda * interp_.value(lambda) - interp_.derivative(lambda);
}

CpCurve load_cp_curve(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> lambda;
  std::vector<double> cp;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty()) continue;
    const auto fields = text::split(body, ',');
    if (fields.size() != 2) {
      throw std::invalid_argument("C_p file line " + std::to_string(line_no) +
                                  ": expected two comma-separated columns");
    }
    if (!have_header) {
      if (text::trim(fields[0]) != "lambda" || text::trim(fields[1]) != "cp") {
        throw std::invalid_argument("C_p file: header row 'lambda,cp' required");
      }
      have_header = true;
      continue;
    }
    try {
      lambda.push_back(text::parse_double(fields[0]));
      cp.push_back(text::parse_double(fields[1]));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("C_p file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) {
    throw std::invalid_argument("C_p file: empty input");
  }
  return CpCurve::from_table(std::move(lambda), std::move(cp));
}

CpCurve load_cp_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open C_p file " + path.string());
  }
  return load_cp_curve(in);
}

void save_cp_curve(std::ostream& out, const CpCurve& curve) {
  out << "lambda,cp\n";
  const auto x = curve.lambda_grid();
  const auto y = curve.cp_values();
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << text::format_double(x[i]) << ',' << text::format_double(y[i]) << '\n';
  }
}

void save_cp_curve(const std::filesystem::path& path, const CpCurve& curve) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write C_p file " + path.string());
  }
  save_cp_curve(out, curve);
}

CpCurve synthetic_cp_curve() {
  std::vector<double> lambda;
  std::vector<double> cp;
  lambda.reserve(kSyntheticTable.size());
  cp.reserve(kSyntheticTable.size());
  for (const auto& [l, c] : kSyntheticTable) {
    lambda.push_back(l);
    cp.push_back(c);
  }
  return CpCurve::from_table(std::move(lambda), std::move(cp));
}

}  // namespace windest
