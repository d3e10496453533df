#include "udw/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2d make(double a, double b, double c, double d) {
  Eigen::Matrix2d m;
  m << a, b, c, d;
  return m;
}

void require_principal(double omega, double lambda, const char* who) {
  if (!(std::abs(omega * lambda) < 0.5 * kPi))
    throw std::domain_error(std::string(who) + ": requires |omega lambda| < pi/2");
}

}  // namespace

SymplecticMap sym_rotation(double omega, double lambda) {
  if (!(omega > 0.0)) throw std::invalid_argument("sym_rotation: omega must be > 0");
  const double c = std::cos(omega * lambda);
  const double s = std::sin(omega * lambda);
  return {make(c, s / omega, -omega * s, c)};
}

SymplecticMap sym_shear_scale(double f, double g) {
  const double e = std::exp(f);
  return {make(1.0 / e, 0.0, g * e, e)};
}

SymplecticMap sym_free_particle(double T) { return {make(1.0, T, 0.0, 1.0)}; }

SymplecticMap sym_takagi_v(double omega, double lambda, ShearSign sign) {
  require_principal(omega, lambda, "sym_takagi_v");
  const double f = std::log(std::cos(omega * lambda));
  const double g = omega * std::tan(omega * lambda);
  return sym_shear_scale(f, sign == ShearSign::standard ? g : -g);
}

double max_abs_entry(const Eigen::Matrix2d& m) { return m.cwiseAbs().maxCoeff(); }

double takagi_free_particle_residual(double omega, double lambda, ShearSign sign) {
  const SymplecticMap vu = sym_takagi_v(omega, lambda, sign) * sym_rotation(omega, lambda);
  const double T = std::tan(omega * lambda) / omega;
  return max_abs_entry(vu.m - sym_free_particle(T).m);
}

double takagi_cross_identity_residual(double omega, double Omega, double lambda, ShearSign sign) {
  const ConformalTakagiMap map(omega, Omega);
  if (map.power_law()) throw std::invalid_argument("takagi_cross_identity_residual: Omega must be > 0");
  const double tau = tau_of_lambda(map, lambda);
  const SymplecticMap lhs = sym_takagi_v(omega, lambda, sign) * sym_rotation(omega, lambda);
  const SymplecticMap rhs = sym_takagi_v(Omega, tau, sign) * sym_rotation(Omega, tau);
  return max_abs_entry(lhs.m - rhs.m);
}

double heisenberg_q_relation_residual(double omega, double Omega, double lambda) {
  const ConformalTakagiMap map(omega, Omega);
  if (map.power_law()) throw std::invalid_argument("heisenberg_q_relation_residual: Omega must be > 0");
  const double cw = std::cos(omega * lambda);
  if (cw == 0.0) throw std::domain_error("heisenberg_q_relation_residual: cos(omega lambda) = 0");
  const double tau = tau_of_lambda(map, lambda);
  const double ratio = std::cos(Omega * tau) / cw;
  const Eigen::RowVector2d row_w = sym_rotation(omega, lambda).m.row(0);
  const Eigen::RowVector2d row_W = sym_rotation(Omega, tau).m.row(0);
  return (row_W - ratio * row_w).cwiseAbs().maxCoeff();
}

std::complex<double> transported_mode(const ConformalTakagiMap& map, double tau) {
  const double lambda = lambda_of_tau(map, tau);
  const double c = conformal_factor(map, lambda);
  return std::polar(std::sqrt(c), map.omega() * lambda);
}

std::complex<double> transported_mode_derivative(const ConformalTakagiMap& map, double tau) {
  const double w = map.omega();
  const double lambda = lambda_of_tau(map, tau);
  const double c = conformal_factor(map, lambda);
  const double r = map.ratio();
  const double dc = c * c * w * std::sin(2.0 * w * lambda) * (1.0 - r * r);
  const double root = std::sqrt(c);
  const std::complex<double> du_dlambda =
      std::complex<double>(0.5 * dc / root, w * root) * std::polar(1.0, w * lambda);
  return du_dlambda / c;
}

BogoliubovPair vacuum_bogoliubov(double omega, double Omega) {
  if (!(omega > 0.0 && Omega > 0.0))
    throw std::invalid_argument("vacuum_bogoliubov: omega and Omega must be > 0");
  const ConformalTakagiMap map(omega, Omega);
  const std::complex<double> u0 = transported_mode(map, 0.0);
  const std::complex<double> v0 = transported_mode_derivative(map, 0.0) / std::complex<double>(0.0, Omega);
  const double k = 0.5 * std::sqrt(Omega / omega);
  return {k * (u0 + v0), k * (u0 - v0)};
}

bool TakagiSuiteResult::passed(double tol, double bogoliubov_tol) const {
  return free_particle <= tol && cross_identity <= tol && heisenberg <= tol && determinant <= tol &&
         bogoliubov <= bogoliubov_tol;
}

std::vector<double> principal_branch_grid(double omega, int points, double fraction) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(points, 0)));
  const double half = fraction * 0.5 * kPi / omega;
  for (int i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : -1.0 + 2.0 * i / (points - 1);
    out.push_back(s * half);
  }
  return out;
}

TakagiSuiteResult run_takagi_suite(const std::vector<double>& omegas, const std::vector<double>& Omegas,
                                   int lambda_points, ShearSign sign) {
  TakagiSuiteResult r;
  for (double w : omegas) {
    for (double W : Omegas) {
      const ConformalTakagiMap map(w, W);
      for (double lambda : principal_branch_grid(w, lambda_points)) {
        const double tau = tau_of_lambda(map, lambda);
        r.free_particle = std::max({r.free_particle, takagi_free_particle_residual(w, lambda, sign),
                                    takagi_free_particle_residual(W, tau, sign)});
        r.cross_identity = std::max(r.cross_identity, takagi_cross_identity_residual(w, W, lambda, sign));
        r.heisenberg = std::max(r.heisenberg, heisenberg_q_relation_residual(w, W, lambda));
        r.determinant = std::max({r.determinant, std::abs(sym_rotation(w, lambda).det() - 1.0),
                                  std::abs(sym_takagi_v(w, lambda, sign).det() - 1.0)});
        ++r.points;
      }
      r.bogoliubov = std::max(r.bogoliubov, std::abs(vacuum_bogoliubov(w, W).normalization() - 1.0));
    }
  }
  return r;
}

}  // namespace udw
