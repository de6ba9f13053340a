#pragma once

// Data-parallel inner loops of the stability analysis and their serial
// reference versions. The parallel kernels are OpenMP loops when the
// library is built with OpenMP and plain loops otherwise; the reference
// versions never thread and exist to pin the parallel results in tests and
// benchmarks.

#include <complex>
#include <cstddef>
#include <span>

#include "windest/cp_curve.hpp"
#include "windest/turbine.hpp"

namespace windest::kernels {

// G(jw) = (gamma jw + beta) / (jw)^2 * exp(-jwT), written into `out`.
void loop_frequency_response(double gamma, double beta, double delay, std::span<const double> omega,
                             std::span<std::complex<double>> out);

struct NearestPoint {
  double distance = 0.0;
  std::size_t index = 0;  // lowest index on ties
};

// Smallest |g_i - center|.
NearestPoint nearest_to(std::span<const std::complex<double>> g, std::complex<double> center);

struct RatioExtrema {
  double min = 0.0;
  double max = 0.0;
  std::size_t used = 0;     // samples inside the C_p envelope
  std::size_t skipped = 0;  // samples whose tip-speed ratio fell outside
};

// Extremes of Phi(omega_r, U) / U on a grid_n x grid_n lattice spanning the
// two closed ranges.
RatioExtrema sector_ratio_extrema(const TurbineParams& params, const CpCurve& curve, double omega_lo,
                                  double omega_hi, double u_lo, double u_hi, std::size_t grid_n);

// Number of worker threads the parallel kernels will use.
int worker_threads();

namespace reference {

void loop_frequency_response(double gamma, double beta, double delay, std::span<const double> omega,
                             std::span<std::complex<double>> out);

NearestPoint nearest_to(std::span<const std::complex<double>> g, std::complex<double> center);

RatioExtrema sector_ratio_extrema(const TurbineParams& params, const CpCurve& curve, double omega_lo,
                                  double omega_hi, double u_lo, double u_hi, std::size_t grid_n);

}  // namespace reference

}  // namespace windest::kernels
