#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "udw/geometry.hpp"

namespace udw {

struct Support {
  double lo;
  double hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

/// Real switching profile chi(x) with compact support.
///
/// Built-in kinds:
///  - gaussian: exp(-(x - center)^2 / (2 width^2)), truncated at 8 widths;
///  - cos_squared: cos^2(pi (x - mid) / (t1 - t0)) on (t0, t1);
///  - tabulated: cubic B-spline through uniformly spaced samples;
///  - transported: the conformal-Takagi image of another switching
///    (produced only by transform_switching).
///
/// Copies share the immutable implementation.
class SwitchingFunction {
 public:
  enum class Kind { gaussian, cos_squared, tabulated, transported };

  static constexpr double kGaussianTruncation = 8.0;

  static SwitchingFunction gaussian(double width, double center = 0.0);
  static SwitchingFunction cos_squared(double t0, double t1);
  static SwitchingFunction tabulated(double start, double step, std::vector<double> samples);

  double operator()(double x) const;
  Support support() const;
  Kind kind() const;
  std::string kind_name() const;

  /// Characteristic duration: width for gaussian, t1 - t0 for cos_squared, support
  /// width for tabulated. Transported profiles report the timescale of their source,
  /// which is measured in the conformal time that regulates the field kernel.
  double timescale() const;

  /// Fourier transform  int dx chi(x) e^{i nu x}. Closed form for gaussian and
  /// cos_squared, composite Gauss-Legendre otherwise.
  std::complex<double> fourier(double nu) const;

  /// Gaussian/cos_squared parameters, for serialization. Zero for other kinds.
  double param_a() const;
  double param_b() const;

  struct Impl;

 private:
  explicit SwitchingFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend SwitchingFunction transform_switching(const ConformalTakagiMap&, const SwitchingFunction&);
};

}  // namespace udw
