#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "udw/harvesting.hpp"

namespace udw::cli {

/// Malformed or inconsistent configuration; the message carries file:line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeometryConfig {
  double omega = 1.0;
  std::vector<double> Omegas{0.5, 1.0, 2.0};
  double T_min = -5.0, T_max = 5.0;
  int points = 501;
  double separation = 1.0;
  std::optional<double> lambda_min, lambda_max;  ///< default: -T range
  SwitchingFunction switching = SwitchingFunction::gaussian(0.3);
};

struct CheckConfig {
  std::vector<double> omegas{0.5, 1.0, 2.0};
  std::vector<double> Omegas{0.5, 1.5, 3.0};
  int lambda_points = 50;
  double tolerance = 1e-12;
  double bogoliubov_tolerance = 1e-10;
  struct Point {
    double omega, Omega, lambda;
  };
  std::optional<Point> point;
  /// dualize: rows whose resid_max exceeds this fail the run (exit 1).
  std::optional<double> max_residual;
};

struct RunConfig {
  std::string source = "<default>";
  HarvestScenario scenario;
  bool frw_frame = false;
  double frw_Omega = 0.0;
  /// interaction_scale given explicitly for A / B (otherwise model default).
  bool explicit_scale_a = false, explicit_scale_b = false;
  std::vector<double> sweep_frequencies;
  std::vector<double> sweep_Omegas;
  std::string output_path;
  GeometryConfig geometry;
  CheckConfig check;
};

RunConfig parse_config(const std::string& text, const std::string& source = "<string>");
RunConfig load_config(const std::string& path);

/// Scenario with both detectors retuned to `frequency`; oscillator scales follow unless explicit.
HarvestScenario with_frequency(const RunConfig& cfg, double frequency);

}  // namespace udw::cli
