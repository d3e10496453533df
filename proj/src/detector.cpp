#include "udw/detector.hpp"

#include <cmath>
#include <stdexcept>

namespace udw {

const char* model_name(DetectorModel model) {
  return model == DetectorModel::qubit ? "qubit" : "oscillator";
}

double StaticTrajectory::conformal_time(double proper) const {
  return frw ? lambda_of_tau(*frw, proper) : proper;
}

std::optional<double> StaticTrajectory::proper_time(double conformal) const {
  if (!frw) return conformal;
  if (frw->power_law() && !(std::abs(conformal) < frw->power_law_half_width())) return std::nullopt;
  return tau_of_lambda(*frw, conformal);
}

double StaticTrajectory::gamma(double proper) const {
  return frw ? 1.0 / scale_factor(*frw, proper) : 1.0;
}

DetectorSpec DetectorSpec::qubit(char label, double gap, double coupling, const Vec3& position,
                                 SwitchingFunction switching) {
  return DetectorSpec{label, DetectorModel::qubit, gap, coupling, 1.0, {position, std::nullopt},
                      std::move(switching), std::nullopt};
}

DetectorSpec DetectorSpec::oscillator(char label, double omega, double coupling, const Vec3& position,
                                      SwitchingFunction switching) {
  return DetectorSpec{label, DetectorModel::oscillator, omega, coupling, std::sqrt(2.0 * omega),
                      {position, std::nullopt}, std::move(switching), std::nullopt};
}

double DetectorSpec::amplitude() const {
  if (model == DetectorModel::qubit) return 1.0;
  const double mode_omega = squeezed ? squeezed->map.omega() : frequency;
  return interaction_scale / std::sqrt(2.0 * mode_omega);
}

std::complex<double> DetectorSpec::mode(double proper) const {
  if (squeezed) return transported_mode(squeezed->map, proper);
  return std::polar(1.0, frequency * proper);
}

std::complex<double> DetectorSpec::profile(double proper) const {
  const double chi = switching(proper);
  if (chi == 0.0) return 0.0;
  return (chi * amplitude()) * mode(proper);
}

void DetectorSpec::validate() const {
  // A squeezed dual oscillator may have Omega = 0 (free particle); its mode is u(tau).
  const bool free_dual = squeezed && squeezed->map.power_law() && frequency == 0.0;
  if (!(std::isfinite(frequency) && (frequency > 0.0 || free_dual)))
    throw std::invalid_argument("detector frequency must be > 0");
  if (!std::isfinite(coupling)) throw std::invalid_argument("detector coupling must be finite");
  if (model == DetectorModel::qubit && interaction_scale != 1.0)
    throw std::invalid_argument("qubit detectors have interaction_scale = 1");
  if (model == DetectorModel::qubit && squeezed)
    throw std::invalid_argument("qubit detectors start in their ground state");
  if (!std::isfinite(interaction_scale)) throw std::invalid_argument("interaction_scale must be finite");
}

}  // namespace udw
