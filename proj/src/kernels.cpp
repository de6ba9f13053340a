#include "windest/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace windest::kernels {

namespace {

inline std::complex<double> loop_gain_at(double gamma, double beta, double delay, double w) {
  // (beta + j gamma w) / (-w^2) * (cos wT - j sin wT)
  const std::complex<double> rational(-beta / (w * w), -gamma / w);
  return rational * std::polar(1.0, -w * delay);
}

inline double lattice(double lo, double hi, std::size_t i, std::size_t n) {
  if (n == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

inline bool sector_sample(const TurbineParams& params, const CpCurve& curve, double w, double u,
                          double& ratio) {
  const double lambda = w * params.rotor_radius() / u;
  if (!curve.contains(lambda)) return false;
  ratio = params.phi_scale() * u * u / w * curve.cp(lambda);
  return true;
}

void check_sizes(std::span<const double> omega, std::span<std::complex<double>> out) {
  if (omega.size() != out.size()) {
    throw std::invalid_argument("frequency response: output span size mismatch");
  }
}

}  // namespace

int worker_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void loop_frequency_response(double gamma, double beta, double delay, std::span<const double> omega,
                             std::span<std::complex<double>> out) {
  check_sizes(omega, out);
  const auto n = static_cast<std::ptrdiff_t>(omega.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = loop_gain_at(gamma, beta, delay, omega[i]);
  }
}

NearestPoint nearest_to(std::span<const std::complex<double>> g, std::complex<double> center) {
  if (g.empty()) throw std::invalid_argument("nearest_to: empty locus");
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  NearestPoint best{std::numeric_limits<double>::infinity(), 0};
#pragma omp parallel
  {
    NearestPoint local{std::numeric_limits<double>::infinity(), 0};
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double d = std::abs(g[i] - center);
      if (d < local.distance) local = {d, static_cast<std::size_t>(i)};
    }
#pragma omp critical(windest_nearest)
    {
      if (local.distance < best.distance ||
          (local.distance == best.distance && local.index < best.index)) {
        best = local;
      }
    }
  }
  return best;
}

RatioExtrema sector_ratio_extrema(const TurbineParams& params, const CpCurve& curve, double omega_lo,
                                  double omega_hi, double u_lo, double u_hi, std::size_t grid_n) {
  const auto total = static_cast<std::ptrdiff_t>(grid_n * grid_n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi) reduction(+ : used)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto i = static_cast<std::size_t>(k) / grid_n;
    const auto j = static_cast<std::size_t>(k) % grid_n;
    double ratio = 0.0;
    if (sector_sample(params, curve, lattice(omega_lo, omega_hi, i, grid_n), lattice(u_lo, u_hi, j, grid_n),
                      ratio)) {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ++used;
    }
  }
  return {lo, hi, used, grid_n * grid_n - used};
}

namespace reference {

void loop_frequency_response(double gamma, double beta, double delay, std::span<const double> omega,
                             std::span<std::complex<double>> out) {
  check_sizes(omega, out);
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const std::complex<double> s(0.0, omega[i]);
    out[i] = (gamma * s + beta) / (s * s) * std::exp(-s * delay);
  }
}

NearestPoint nearest_to(std::span<const std::complex<double>> g, std::complex<double> center) {
  if (g.empty()) throw std::invalid_argument("nearest_to: empty locus");
  NearestPoint best{std::abs(g[0] - center), 0};
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double d = std::abs(g[i] - center);
    if (d < best.distance) best = {d, i};
  }
  return best;
}

RatioExtrema sector_ratio_extrema(const TurbineParams& params, const CpCurve& curve, double omega_lo,
                                  double omega_hi, double u_lo, double u_hi, std::size_t grid_n) {
  RatioExtrema out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t i = 0; i < grid_n; ++i) {
    for (std::size_t j = 0; j < grid_n; ++j) {
      double ratio = 0.0;
      if (sector_sample(params, curve, lattice(omega_lo, omega_hi, i, grid_n), lattice(u_lo, u_hi, j, grid_n),
                        ratio)) {
        out.min = std::min(out.min, ratio);
        out.max = std::max(out.max, ratio);
        ++out.used;
      } else {
        ++out.skipped;
      }
    }
  }
  return out;
}

}  // namespace reference

}  // namespace windest::kernels
