#pragma once

#include <array>
#include <complex>
#include <optional>

#include "udw/geometry.hpp"
#include "udw/switching.hpp"

namespace udw {

using Vec3 = std::array<double, 3>;

/// Event in Minkowski / conformal coordinates (t, x).
struct SpacetimePoint {
  double t;
  Vec3 x;
};

double distance(const Vec3& a, const Vec3& b);

/// Minkowski vacuum kernel of the massless field in 3+1 dimensions:
///   W(p, p2) = 1 / (4 pi^2 (|dx|^2 - (dt - i eps)^2)),  dt = p.t - p2.t.
std::complex<double> wightman_flat(const SpacetimePoint& p, const SpacetimePoint& p2, double epsilon);

/// Conformal-vacuum kernel of the conformal-Takagi FRW spacetime (n = 3):
///   W_frw(p, p2) = W_flat(p, p2) / (C(p.t) C(p2.t)),
/// with both points in conformal coordinates.
std::complex<double> wightman_frw(const SpacetimePoint& p, const SpacetimePoint& p2,
                                  const ConformalTakagiMap& map, double epsilon);

/// Converts cosmological time T to the conformal time t of the same event.
SpacetimePoint from_cosmological(const ConformalTakagiMap& map, double T, const Vec3& x);

/// A vacuum kernel bound to its frame and regulator.
class WightmanKernel {
 public:
  static WightmanKernel minkowski(double epsilon);
  static WightmanKernel frw(const ConformalTakagiMap& map, double epsilon);

  std::complex<double> operator()(const SpacetimePoint& p, const SpacetimePoint& p2) const;

  double epsilon() const { return epsilon_; }
  const std::optional<ConformalTakagiMap>& map() const { return map_; }

 private:
  WightmanKernel(std::optional<ConformalTakagiMap> map, double epsilon);
  std::optional<ConformalTakagiMap> map_;
  double epsilon_;
};

/// Radial-k integrand of the plane-wave representation of L_ab for static detectors
/// in flat spacetime at separation L:
///
///   L_ab / (c_a c_b) = int_0^inf dk  k sinc(k L) / (4 pi^2)
///                      * chi_a~(omega_a + k) * conj(chi_b~(omega_b + k)),
///
/// where chi~(nu) = int dx chi(x) e^{i nu x}. The measure d^3k / ((2pi)^3 2k) gives
/// k dk / (4 pi^2) after the angular integral, which contributes sinc(kL) = sin(kL)/(kL).
std::complex<double> mode_integrand_static(double k, const SwitchingFunction& chi_a,
                                           const SwitchingFunction& chi_b, double omega_a, double omega_b,
                                           double separation);

}  // namespace udw
