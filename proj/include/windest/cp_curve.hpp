#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace windest {

/// Shape-preserving piecewise cubic Hermite interpolant.
///
/// Node slopes use the weighted harmonic mean of adjacent secants
/// (Fritsch-Butland), set to zero where the data turns. The result is C1,
/// reproduces the nodes exactly and is monotone wherever the data is, so a
/// single-peaked table stays single-peaked after interpolation.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double derivative(double x) const;

  std::span<const double> knots() const noexcept { return x_; }
  std::span<const double> values() const noexcept { return y_; }
  std::span<const double> slopes() const noexcept { return slope_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

/// Power coefficient C_p as a function of tip-speed ratio, on a closed
/// envelope [lambda_min, lambda_max]. Immutable once built.
///
/// Construction enforces: at least four nodes, strictly increasing lambda
/// with lambda_min > 0, C_p > 0 everywhere, and a single interior peak
/// (C_p' > 0 below lambda*, < 0 above). Queries outside the envelope throw
/// EnvelopeError; there is no extrapolation.
class CpCurve {
 public:
  static CpCurve from_table(std::vector<double> lambda, std::vector<double> cp);

  double lambda_min() const noexcept { return interp_.knots().front(); }
  double lambda_max() const noexcept { return interp_.knots().back(); }
  bool contains(double lambda) const noexcept {
    return lambda >= lambda_min() && lambda <= lambda_max();
  }

  std::span<const double> lambda_grid() const noexcept { return interp_.knots(); }
  std::span<const double> cp_values() const noexcept { return interp_.values(); }

  double cp(double lambda) const;
  double cp_prime(double lambda) const;
  // (3/lambda) C_p - C_p'. Its sign is the sign of dPhi/dU.
  double kappa(double lambda) const;

  // Maximiser of C_p and the peak value.
  double lambda_star() const noexcept { return lambda_star_; }
  double cp_star() const noexcept { return cp_star_; }

  // Largest root of kappa below lambda*, or lambda_min when kappa > 0 on
  // [lambda_min, lambda*].
  double lambda_zero() const noexcept { return lambda_zero_; }

 private:
  explicit CpCurve(MonotoneCubic interp);
  void check_envelope(double lambda) const;

  MonotoneCubic interp_;
  double lambda_star_ = 0.0;
  double cp_star_ = 0.0;
  double lambda_zero_ = 0.0;
};

// CSV with a `lambda,cp` header row.
CpCurve load_cp_curve(std::istream& in);
CpCurve load_cp_curve(const std::filesystem::path& path);
void save_cp_curve(std::ostream& out, const CpCurve& curve);
void save_cp_curve(const std::filesystem::path& path, const CpCurve& curve);

/// Synthetic single-peak curve on [2, 10] with lambda* = 7.5 and
/// C_p* = 0.48. It is shaped after a typical multi-megawatt rotor at fixed
/// pitch but is not measured data.
CpCurve synthetic_cp_curve();

}  // namespace windest
