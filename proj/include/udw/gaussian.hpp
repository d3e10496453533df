#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "udw/geometry.hpp"

namespace udw {

/// Heisenberg action of a one-mode quadratic unitary on (q, p):
/// U^dag (q, p)^T U = m (q, p)^T. Products compose in operator order,
/// S(U1 U2) = S(U1) S(U2).
struct SymplecticMap {
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();

  double det() const { return m.determinant(); }
  SymplecticMap operator*(const SymplecticMap& rhs) const { return {m * rhs.m}; }
};

/// exp(-i H_omega lambda), H_omega = (omega^2 q^2 + p^2) / 2.
SymplecticMap sym_rotation(double omega, double lambda);

/// exp(i f (qp + pq)/2) exp(i g q^2/2):  q -> e^{-f} q,  p -> e^{f} (p + g q).
///
/// With f = ln cos(omega lambda) and g = omega tan(omega lambda) this is V_omega(lambda);
/// the ODE-solution form W_{f,g} is sym_shear_scale(-f, -g).
SymplecticMap sym_shear_scale(double f, double g);

/// exp(-i p^2 T / 2).
SymplecticMap sym_free_particle(double T);

/// Sign convention of the q^2 shear in V_omega. `flipped` exists only to
/// produce a deliberately broken suite (negative control for check-takagi).
enum class ShearSign { standard, flipped };

/// V_omega(lambda) on the principal branch |omega lambda| < pi/2.
SymplecticMap sym_takagi_v(double omega, double lambda, ShearSign sign = ShearSign::standard);

double max_abs_entry(const Eigen::Matrix2d& m);

/// || S_V(w, l) S_U(w, l) - [[1, tan(w l)/w], [0, 1]] ||_inf.
double takagi_free_particle_residual(double omega, double lambda,
                                     ShearSign sign = ShearSign::standard);

/// || S_V(w, l) S_U(w, l) - S_V(W, tau(l)) S_U(W, tau(l)) ||_inf on the principal branch.
double takagi_cross_identity_residual(double omega, double Omega, double lambda,
                                      ShearSign sign = ShearSign::standard);

/// q-row of U_Omega(tau(lambda)) minus (cos(Omega tau)/cos(omega lambda)) times the q-row
/// of U_omega(lambda), max-abs. Throws std::domain_error where cos(omega lambda) == 0.
double heisenberg_q_relation_residual(double omega, double Omega, double lambda);

struct BogoliubovPair {
  std::complex<double> alpha;
  std::complex<double> beta;

  double normalization() const { return std::norm(alpha) - std::norm(beta); }
};

/// Takagi mode u(tau) = C(lambda(tau))^{1/2} exp(i omega lambda(tau)) and its tau-derivative.
std::complex<double> transported_mode(const ConformalTakagiMap& map, double tau);
std::complex<double> transported_mode_derivative(const ConformalTakagiMap& map, double tau);

/// (alpha, beta) with u/sqrt(2 omega) = alpha e^{i Omega tau}/sqrt(2 Omega)
///                                    + beta e^{-i Omega tau}/sqrt(2 Omega),
/// matched at tau = 0. Requires omega, Omega > 0.
BogoliubovPair vacuum_bogoliubov(double omega, double Omega);

struct TakagiSuiteResult {
  double free_particle = 0.0;
  double cross_identity = 0.0;
  double heisenberg = 0.0;
  double determinant = 0.0;    ///< max |det - 1|
  double bogoliubov = 0.0;     ///< max ||alpha|^2 - |beta|^2 - 1|
  int points = 0;

  bool passed(double tol = 1e-12, double bogoliubov_tol = 1e-10) const;
};

/// Runs every identity over omegas x Omegas x lambda_points, with lambda spread over
/// +-0.95 of the principal branch of each omega.
TakagiSuiteResult run_takagi_suite(const std::vector<double>& omegas, const std::vector<double>& Omegas,
                                   int lambda_points, ShearSign sign = ShearSign::standard);

/// Evenly spaced lambda samples covering `fraction` of (-pi/2omega, pi/2omega).
std::vector<double> principal_branch_grid(double omega, int points, double fraction = 0.95);

}  // namespace udw
