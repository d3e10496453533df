#pragma once

#include <complex>
#include <optional>

#include "udw/field.hpp"
#include "udw/gaussian.hpp"
#include "udw/geometry.hpp"
#include "udw/switching.hpp"

namespace udw {

enum class DetectorModel { qubit, oscillator };

const char* model_name(DetectorModel model);

/// Detector at fixed comoving position. Without a map the frame is Minkowski and proper
/// time is t; with a map the frame is the conformal-Takagi FRW spacetime, proper time is
/// the cosmological time T and the conformal time is t = lambda(T).
struct StaticTrajectory {
  Vec3 position{0.0, 0.0, 0.0};
  std::optional<ConformalTakagiMap> frw;

  bool is_frw() const { return frw.has_value(); }
  double conformal_time(double proper) const;
  /// Inverse of conformal_time; nullopt outside the image (Omega = 0 limit).
  std::optional<double> proper_time(double conformal) const;
  /// gamma = dt/d(proper time); 1 in Minkowski, 1/a(T) in FRW.
  double gamma(double proper) const;
  SpacetimePoint event(double proper) const { return {conformal_time(proper), position}; }
};

/// Initial state of a dual-side oscillator: the flat ground state seen through the
/// Takagi map, i.e. a squeezed state of the Omega oscillator.
struct TakagiSqueezedState {
  ConformalTakagiMap map;
  std::optional<BogoliubovPair> bogoliubov;  ///< absent in the Omega = 0 limit
};

struct DetectorSpec {
  char label = 'A';
  DetectorModel model = DetectorModel::qubit;
  double frequency = 1.0;          ///< energy gap (qubit) or angular frequency (oscillator)
  double coupling = 0.0;
  double interaction_scale = 1.0;  ///< sqrt(2 omega) for oscillators; always 1 for qubits
  StaticTrajectory trajectory;
  SwitchingFunction switching;
  std::optional<TakagiSqueezedState> squeezed;  ///< nullopt: ground state of own Hamiltonian

  static DetectorSpec qubit(char label, double gap, double coupling, const Vec3& position,
                            SwitchingFunction switching);
  static DetectorSpec oscillator(char label, double omega, double coupling, const Vec3& position,
                                 SwitchingFunction switching);

  /// interaction_scale times the 1/sqrt(2 omega) normalization of the coupled mode.
  /// Exactly 1 for qubits, for flat oscillators and for correctly dualized oscillators.
  double amplitude() const;

  /// Mode multiplying the raising operator: e^{i omega x}, or u(x) for a squeezed state.
  std::complex<double> mode(double proper) const;

  /// chi(x) * amplitude * mode(x): the detector factor of the matrix elements (without coupling).
  std::complex<double> profile(double proper) const;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

}  // namespace udw
