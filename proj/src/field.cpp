#include "udw/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace udw {

namespace {

constexpr double kInvFourPiSq = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::complex<double> wightman_flat(const SpacetimePoint& p, const SpacetimePoint& p2, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("wightman_flat: epsilon must be > 0");
  const double dt = p.t - p2.t;
  const double dx = p.x[0] - p2.x[0], dy = p.x[1] - p2.x[1], dz = p.x[2] - p2.x[2];
  const double r2 = dx * dx + dy * dy + dz * dz;
  // |dx|^2 - (dt - i eps)^2 = (r2 - dt^2 + eps^2) + 2 i eps dt
  const double re = r2 - dt * dt + epsilon * epsilon;
  const double im = 2.0 * epsilon * dt;
  // Explicit reciprocal so that swapping the arguments gives the exact conjugate.
  const double norm = re * re + im * im;
  return {kInvFourPiSq * re / norm, -kInvFourPiSq * im / norm};
}

std::complex<double> wightman_frw(const SpacetimePoint& p, const SpacetimePoint& p2,
                                  const ConformalTakagiMap& map, double epsilon) {
  const double scale = 1.0 / (conformal_factor(map, p.t) * conformal_factor(map, p2.t));
  return scale * wightman_flat(p, p2, epsilon);
}

SpacetimePoint from_cosmological(const ConformalTakagiMap& map, double T, const Vec3& x) {
  return {lambda_of_tau(map, T), x};
}

WightmanKernel::WightmanKernel(std::optional<ConformalTakagiMap> map, double epsilon)
    : map_(std::move(map)), epsilon_(epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("WightmanKernel: epsilon must be > 0");
}

WightmanKernel WightmanKernel::minkowski(double epsilon) { return WightmanKernel(std::nullopt, epsilon); }

WightmanKernel WightmanKernel::frw(const ConformalTakagiMap& map, double epsilon) {
  return WightmanKernel(map, epsilon);
}

std::complex<double> WightmanKernel::operator()(const SpacetimePoint& p, const SpacetimePoint& p2) const {
  if (map_) return wightman_frw(p, p2, *map_, epsilon_);
  return wightman_flat(p, p2, epsilon_);
}

std::complex<double> mode_integrand_static(double k, const SwitchingFunction& chi_a,
                                           const SwitchingFunction& chi_b, double omega_a, double omega_b,
                                           double separation) {
  const double x = k * separation;
  const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return kInvFourPiSq * k * sinc * chi_a.fourier(omega_a + k) * std::conj(chi_b.fourier(omega_b + k));
}

}  // namespace udw
