#include <algorithm>
#include <cmath>
#include <numbers>

#include "udw/detector.hpp"
#include "udw/quadrature.hpp"

namespace udw {

IntegralResult fourier_oracle_L(const DetectorSpec& a, const DetectorSpec& b, const QuadratureConfig& cfg) {
  cfg.validate();
  a.validate();
  b.validate();
  if (a.trajectory.is_frw() || b.trajectory.is_frw())
    throw std::invalid_argument("fourier_oracle_L: detectors must be static in the flat frame");
  if (a.squeezed || b.squeezed)
    throw std::invalid_argument("fourier_oracle_L: detectors must start in their ground state");

  IntegralResult out;
  const double couplings = a.coupling * b.coupling * a.amplitude() * b.amplitude();
  if (couplings == 0.0) return out;

  const double sep = distance(a.trajectory.position, b.trajectory.position);
  const double tmin = std::min(a.switching.timescale(), b.switching.timescale());
  const double kmax = 200.0 / tmin;

  auto f = [&](double k) {
    return mode_integrand_static(k, a.switching, b.switching, a.frequency, b.frequency, sep);
  };

  // Zeros of sinc(kL) and the switching oscillation scale.
  std::vector<double> breaks;
  const double step = std::max(std::numbers::pi / std::max(sep, tmin), kmax / 2000.0);
  for (double k = step; k < kmax; k += step) breaks.push_back(k);

  const double rel = std::min(cfg.rel_tol, 1e-9);
  const int maxsub = cfg.max_subdivisions + static_cast<int>(breaks.size()) + 1;
  IntegralResult body = integrate_adaptive(f, 0.0, kmax, breaks, rel, cfg.abs_tol, maxsub);

  // |f(k)| <= A / k^5 beyond kmax (C^1 switchings decay as nu^-3 in Fourier space).
  double amp = 0.0;
  for (int i = 0; i <= 32; ++i) {
    const double k = kmax * (0.5 + 0.5 * i / 32.0);
    amp = std::max(amp, std::abs(f(k)) * std::pow(k, 5));
  }
  const double tail = amp / (4.0 * std::pow(kmax, 4));

  out.value = couplings * body.value;
  out.err_estimate = std::abs(couplings) * (body.err_estimate + tail);
  out.converged = body.converged;
  return out;
}

}  // namespace udw
