#pragma once

#include <stdexcept>

namespace udw {

class SwitchingFunction;

/// Frequency pair (omega, Omega) of a conformal-Takagi transformation.
///
/// Omega > 0 gives the periodic FRW dual; Omega == 0 is the power-law limit,
/// handled with closed forms rather than as a small-Omega numeric.
class ConformalTakagiMap {
 public:
  ConformalTakagiMap(double omega, double Omega, int n_spatial = 3);

  double omega() const { return omega_; }
  double Omega() const { return Omega_; }
  int n_spatial() const { return n_spatial_; }

  bool power_law() const { return Omega_ == 0.0; }
  bool is_identity() const { return Omega_ == omega_; }
  /// Omega / omega.
  double ratio() const { return Omega_ / omega_; }
  /// Half-width pi/(2 omega) of the lambda interval mapped onto all tau when Omega == 0.
  double power_law_half_width() const;

  bool operator==(const ConformalTakagiMap&) const = default;

 private:
  double omega_;
  double Omega_;
  int n_spatial_;
};

// Multi-branch Takagi time: Omega*tau = atan((Omega/omega) tan(omega*lambda - pi n)) + pi n.
// Throws std::domain_error for Omega == 0 and |lambda| >= pi/(2 omega).
double tau_of_lambda(const ConformalTakagiMap& map, double lambda);
double lambda_of_tau(const ConformalTakagiMap& map, double tau);

/// 1 / (cos^2(omega lambda) + (Omega/omega)^2 sin^2(omega lambda)).
double dtau_dlambda(const ConformalTakagiMap& map, double lambda);

/// Conformal factor C(t) of the static-detector solution; equal to dtau_dlambda at lambda = t.
double conformal_factor(const ConformalTakagiMap& map, double t);

/// FRW scale factor a(T); a(T) = C(t(T)) along the conformal-time relation T = tau(t).
double scale_factor(const ConformalTakagiMap& map, double T);

/// a(T) * L for comoving separation L >= 0.
double proper_distance(const ConformalTakagiMap& map, double comoving_separation, double T);

/// tau -> chi(lambda(tau)) * C(lambda(tau))^((n-4)/2).
///
/// For Omega == 0 the support of chi must lie strictly inside (-pi/2omega, pi/2omega),
/// otherwise std::domain_error.
SwitchingFunction transform_switching(const ConformalTakagiMap& map, const SwitchingFunction& chi);

}  // namespace udw
