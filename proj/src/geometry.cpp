#include "udw/geometry.hpp"

#include <cmath>
#include <numbers>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;

// Branch-shifted arctangent: returns theta' with tan(theta') = k tan(theta) on the
// branch of theta. atan2 avoids evaluating tan near the branch joins.
double branch_atan(double k, double theta) {
  const double n = std::round(theta / kPi);
  const double x = theta - n * kPi;
  return std::atan2(k * std::sin(x), std::cos(x)) + n * kPi;
}

}  // namespace

ConformalTakagiMap::ConformalTakagiMap(double omega, double Omega, int n_spatial)
    : omega_(omega), Omega_(Omega), n_spatial_(n_spatial) {
  if (!(std::isfinite(omega) && omega > 0.0))
    throw std::invalid_argument("ConformalTakagiMap: omega must be finite and > 0");
  if (!(std::isfinite(Omega) && Omega >= 0.0))
    throw std::invalid_argument("ConformalTakagiMap: Omega must be finite and >= 0");
  if (n_spatial < 1) throw std::invalid_argument("ConformalTakagiMap: n_spatial must be >= 1");
}

double ConformalTakagiMap::power_law_half_width() const { return kPi / (2.0 * omega_); }

double tau_of_lambda(const ConformalTakagiMap& map, double lambda) {
  if (map.is_identity()) return lambda;
  const double w = map.omega();
  if (map.power_law()) {
    if (!(std::abs(lambda) < map.power_law_half_width()))
      throw std::domain_error("tau_of_lambda: |lambda| >= pi/(2 omega) in the Omega = 0 limit");
    return std::tan(w * lambda) / w;
  }
  return branch_atan(map.ratio(), w * lambda) / map.Omega();
}

double lambda_of_tau(const ConformalTakagiMap& map, double tau) {
  if (map.is_identity()) return tau;
  const double w = map.omega();
  if (map.power_law()) return std::atan(w * tau) / w;
  return branch_atan(1.0 / map.ratio(), map.Omega() * tau) / w;
}

double dtau_dlambda(const ConformalTakagiMap& map, double lambda) {
  if (map.is_identity()) return 1.0;
  const double c = std::cos(map.omega() * lambda);
  const double s = std::sin(map.omega() * lambda);
  const double r = map.ratio();
  return 1.0 / (c * c + r * r * s * s);
}

double conformal_factor(const ConformalTakagiMap& map, double t) { return dtau_dlambda(map, t); }

double scale_factor(const ConformalTakagiMap& map, double T) {
  if (map.is_identity()) return 1.0;
  const double w = map.omega();
  if (map.power_law()) return 1.0 + w * w * T * T;
  const double c = std::cos(map.Omega() * T);
  const double s = std::sin(map.Omega() * T);
  const double k = w / map.Omega();
  return c * c + k * k * s * s;
}

double proper_distance(const ConformalTakagiMap& map, double comoving_separation, double T) {
  if (!(comoving_separation >= 0.0))
    throw std::invalid_argument("proper_distance: separation must be >= 0");
  return scale_factor(map, T) * comoving_separation;
}

}  // namespace udw
