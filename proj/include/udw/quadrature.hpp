#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace udw {

struct DetectorSpec;

/// Hard numerical failure (NaN from a kernel, invalid domain).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Extrapolation { none, richardson };

struct QuadratureConfig {
  double rel_tol = 1e-6;  ///< per fixed regulator
  double abs_tol = 1e-15;
  int max_subdivisions = 1000;  ///< intervals per one-dimensional adaptive pass
  /// Explicit regulators, strictly decreasing. Empty: eps_k = eps0 / 2^k, k < epsilon_levels,
  /// eps0 = epsilon_scale * (shortest switching timescale).
  std::vector<double> epsilon_sequence;
  double epsilon_scale = 1e-2;
  int epsilon_levels = 6;
  Extrapolation extrapolation = Extrapolation::richardson;

  void validate() const;
  std::vector<double> epsilons_for(double timescale) const;
};

struct IntegralResult {
  std::complex<double> value{0.0, 0.0};
  double err_estimate = 0.0;
  double epsilon_used = 0.0;
  bool extrapolated = false;
  /// False when the tolerance was not met, or when the regulator sequence did not settle.
  bool converged = true;
};

using Integrand1D = std::function<std::complex<double>(double)>;
using Kernel2D = std::function<std::complex<double>(double u, double v)>;
/// Appends inner-variable breakpoints (near-singular locations) for a given outer value.
using InnerBreakpoints = std::function<void(double u, std::vector<double>& out)>;

/// Global adaptive G7/K15 quadrature on [a, b]; `breakpoints` inside (a, b) start the
/// partition. Subintervals are summed left to right, so the result does not depend on
/// the order in which they were refined.
IntegralResult integrate_adaptive(const Integrand1D& f, double a, double b, std::span<const double> breakpoints,
                                  double rel_tol, double abs_tol, int max_subdivisions);

/// [u0, u1] x [v0, v1]; `v_breakpoints` marks where the kernel is sharply peaked along v.
struct Rectangle {
  double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;
  std::vector<double> u_breakpoints;
  InnerBreakpoints v_breakpoints;
};

/// Iterated adaptive quadrature: inner over v for every outer node u. The inner error
/// estimates are integrated along u and added to the outer estimate.
IntegralResult integrate_square(const Kernel2D& f, const Rectangle& domain, const QuadratureConfig& cfg);

/// Same as integrate_square restricted to the time-ordered part v <= u.
IntegralResult integrate_ordered(const Kernel2D& f, const Rectangle& domain, const QuadratureConfig& cfg);

/// Polynomial (Richardson) extrapolation of regulated values to eps -> 0, assuming the
/// error starts at O(eps). When the successive differences grow instead of shrinking the
/// sequence is flagged (converged = false) and the finest-eps value is returned with the
/// total drift as its error estimate.
IntegralResult extrapolate_epsilon(std::span<const IntegralResult> results);

/// |d_{k+1}| / |d_k| for the successive differences d_k of a regulator ladder.
std::vector<double> successive_difference_ratios(std::span<const IntegralResult> results);

/// Plane-wave evaluation of L_ab for static detectors in Minkowski space. No regulator:
/// one adaptive k-integral of mode_integrand_static plus an algebraic tail bound.
IntegralResult fourier_oracle_L(const DetectorSpec& a, const DetectorSpec& b, const QuadratureConfig& cfg);

}  // namespace udw
