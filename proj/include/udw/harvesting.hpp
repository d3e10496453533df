#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "udw/detector.hpp"
#include "udw/quadrature.hpp"

namespace udw {

/// How L_ab is evaluated: regulated direct quadrature, or the plane-wave oracle
/// (static flat ground-state detectors only).
enum class LMethod { direct, fourier };

struct HarvestScenario {
  DetectorSpec a = DetectorSpec::qubit('A', 1.0, 0.01, {0, 0, 0}, SwitchingFunction::gaussian(1.0));
  DetectorSpec b = DetectorSpec::qubit('B', 1.0, 0.01, {5, 0, 0}, SwitchingFunction::gaussian(1.0));
  QuadratureConfig quadrature;
  LMethod l_method = LMethod::direct;

  /// Same frame, same detector model, labels A and B.
  void validate() const;
  bool is_frw() const { return a.trajectory.is_frw(); }
  DetectorModel model() const { return a.model; }
  /// Regulator ladder, tied to the shortest switching timescale.
  std::vector<double> epsilons() const;
  /// "minkowski" or "frw(omega=..., Omega=...)".
  std::string frame_name() const;
};

struct MatrixElements {
  IntegralResult L_AA, L_BB, L_AB, M, N_A, N_B;
  bool has_N = false;  ///< oscillators only
};

struct HarvestReport {
  DetectorModel model = DetectorModel::qubit;
  MatrixElements elements;
  Eigen::MatrixXcd rho;
  double E1 = 0.0;
  double negativity = 0.0;
  std::string frame;
  std::string picture;  ///< "flat" or "dual"
  std::vector<double> epsilons;
  std::vector<std::string> warnings;
};

/// Raw regulated integrals with unit couplings. For L the integrand is
/// profile_a(u) conj(profile_b(v)) W(x_b(v), x_a(u)) over the full square.
IntegralResult l_integral(const DetectorSpec& a, const DetectorSpec& b, double epsilon, const QuadratureConfig& cfg);
/// Time-ordered int du int^u dv profile_a(u) profile_b(v) W(x_a(u), x_b(v)).
IntegralResult ordered_integral(const DetectorSpec& a, const DetectorSpec& b, double epsilon,
                                const QuadratureConfig& cfg);

IntegralResult compute_L(const DetectorSpec& a, const DetectorSpec& b, const HarvestScenario& s, int threads = 1);
IntegralResult compute_M(const HarvestScenario& s, int threads = 1);
IntegralResult compute_N(const DetectorSpec& d, const HarvestScenario& s, int threads = 1);

/// All elements of the scenario; every (element, regulator) pair is an independent job.
MatrixElements compute_elements(const HarvestScenario& s, int threads = 1);

/// The leading-order density matrix, 4x4 for qubits in the basis (gg, eg, ge, ee) and 6x6
/// for oscillators in the basis (00, 10, 01, 11, 20, 02). Appends a warning when a matrix
/// element exceeds 0.1 in magnitude.
Eigen::MatrixXcd assemble_rho(const MatrixElements& e, DetectorModel model, std::vector<std::string>* warnings = nullptr);

/// E1 and max(-E1, 0).
std::pair<double, double> negativity_leading(const MatrixElements& e);

/// Eigenvalues (ascending) of the partial transpose on B.
Eigen::VectorXd partial_transpose_spectrum(const Eigen::MatrixXcd& rho, DetectorModel model);

/// Sum of |negative eigenvalues| of the partial transpose on B.
double negativity_pt_exact(const Eigen::MatrixXcd& rho, DetectorModel model);

/// Smallest partial-transpose eigenvalue once the one closest to E1 is removed (E2 / E2').
double subleading_pt_eigenvalue(const Eigen::MatrixXcd& rho, DetectorModel model, double E1);

HarvestReport harvest(const HarvestScenario& s, int threads = 1, const std::string& picture = "flat");

/// The conformal-Takagi image of a flat oscillator scenario.
HarvestScenario dualize(const HarvestScenario& flat, double Omega);

struct DualCheck {
  double Omega = 0.0;
  HarvestReport flat;
  HarvestReport frw;
  double resid_L_AA = 0, resid_L_BB = 0, resid_L_AB = 0, resid_M = 0, resid_abs_M = 0;
  double resid_N_A = 0, resid_N_B = 0, resid_E1 = 0, resid_negativity = 0;
  double resid_max = 0;
};

/// |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_residual(std::complex<double> a, std::complex<double> b);

DualCheck run_dual_check(const HarvestScenario& flat, double Omega, int threads = 1);
/// Reuses an already computed flat report.
DualCheck run_dual_check(const HarvestScenario& flat, const HarvestReport& flat_report, double Omega,
                         int threads = 1);

}  // namespace udw
