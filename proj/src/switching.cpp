#include "udw/switching.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss.hpp>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

struct SwitchingFunction::Impl {
  Kind kind;
  Support support{0.0, 0.0};
  double a = 0.0;  // gaussian: width | cos_squared: t0
  double b = 0.0;  // gaussian: center | cos_squared: t1
  std::optional<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline;
  std::shared_ptr<const Impl> source;
  std::optional<ConformalTakagiMap> map;
  double exponent = 0.0;

  double value(double x) const;
  double timescale() const;
};

double SwitchingFunction::Impl::value(double x) const {
  if (!(x >= support.lo && x <= support.hi)) return 0.0;
  switch (kind) {
    case Kind::gaussian: {
      const double z = (x - b) / a;
      return std::exp(-0.5 * z * z);
    }
    case Kind::cos_squared: {
      if (x <= a || x >= b) return 0.0;
      const double c = std::cos(kPi * (x - 0.5 * (a + b)) / (b - a));
      return c * c;
    }
    case Kind::tabulated:
      return (*spline)(x);
    case Kind::transported: {
      const double lambda = lambda_of_tau(*map, x);
      const double v = source->value(lambda);
      if (v == 0.0 || exponent == 0.0) return v;
      return v * std::pow(conformal_factor(*map, lambda), exponent);
    }
  }
  return 0.0;
}

double SwitchingFunction::Impl::timescale() const {
  switch (kind) {
    case Kind::gaussian:
      return a;
    case Kind::cos_squared:
      return b - a;
    case Kind::tabulated:
      return support.width();
    case Kind::transported:
      return source->timescale();
  }
  return 0.0;
}

SwitchingFunction SwitchingFunction::gaussian(double width, double center) {
  if (!(std::isfinite(width) && width > 0.0) || !std::isfinite(center))
    throw std::invalid_argument("gaussian switching: width must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::gaussian;
  impl->a = width;
  impl->b = center;
  impl->support = {center - kGaussianTruncation * width, center + kGaussianTruncation * width};
  return SwitchingFunction(std::move(impl));
}

SwitchingFunction SwitchingFunction::cos_squared(double t0, double t1) {
  if (!(std::isfinite(t0) && std::isfinite(t1) && t1 > t0))
    throw std::invalid_argument("cos_squared switching: need t0 < t1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::cos_squared;
  impl->a = t0;
  impl->b = t1;
  impl->support = {t0, t1};
  return SwitchingFunction(std::move(impl));
}

SwitchingFunction SwitchingFunction::tabulated(double start, double step, std::vector<double> samples) {
  if (samples.size() < 4) throw std::invalid_argument("tabulated switching: need at least 4 samples");
  if (!(std::isfinite(step) && step > 0.0) || !std::isfinite(start))
    throw std::invalid_argument("tabulated switching: step must be > 0");
  if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); }))
    throw std::invalid_argument("tabulated switching: samples must be finite");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::tabulated;
  impl->support = {start, start + step * static_cast<double>(samples.size() - 1)};
  impl->spline.emplace(samples.begin(), samples.end(), start, step);
  return SwitchingFunction(std::move(impl));
}

double SwitchingFunction::operator()(double x) const { return impl_->value(x); }
Support SwitchingFunction::support() const { return impl_->support; }
SwitchingFunction::Kind SwitchingFunction::kind() const { return impl_->kind; }
double SwitchingFunction::timescale() const { return impl_->timescale(); }
double SwitchingFunction::param_a() const { return impl_->a; }
double SwitchingFunction::param_b() const { return impl_->b; }

std::string SwitchingFunction::kind_name() const {
  switch (impl_->kind) {
    case Kind::gaussian:
      return "gaussian";
    case Kind::cos_squared:
      return "cos_squared";
    case Kind::tabulated:
      return "tabulated";
    case Kind::transported:
      return "transported";
  }
  return "unknown";
}

std::complex<double> SwitchingFunction::fourier(double nu) const {
  const Impl& s = *impl_;
  if (s.kind == Kind::gaussian) {
    // Untruncated transform; the 8-width tail is below 1e-14 of the peak.
    const double amp = s.a * std::sqrt(2.0 * kPi) * std::exp(-0.5 * s.a * s.a * nu * nu);
    return std::polar(amp, nu * s.b);
  }
  if (s.kind == Kind::cos_squared) {
    const double w = s.b - s.a;
    const double k = 2.0 * kPi / w;
    const double amp = 0.5 * w * sinc(0.5 * nu * w) +
                       0.25 * w * (sinc(0.5 * (nu + k) * w) + sinc(0.5 * (nu - k) * w));
    return std::polar(1.0, 0.5 * nu * (s.a + s.b)) * amp;
  }

  // Panels short enough to resolve both the profile and the e^{i nu x} phase.
  const double width = s.support.width();
  double h = s.timescale() / 16.0;
  if (nu != 0.0) h = std::min(h, kPi / (2.0 * std::abs(nu)));
  const int panels = std::max(1, static_cast<int>(std::ceil(width / h)));
  const double dh = width / panels;
  using rule = boost::math::quadrature::gauss<double, 20>;
  double re = 0.0, im = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = s.support.lo + p * dh;
    const double hi = lo + dh;
    re += rule::integrate([&](double x) { return s.value(x) * std::cos(nu * x); }, lo, hi);
    im += rule::integrate([&](double x) { return s.value(x) * std::sin(nu * x); }, lo, hi);
  }
  return {re, im};
}

SwitchingFunction transform_switching(const ConformalTakagiMap& map, const SwitchingFunction& chi) {
  const Support src = chi.support();
  if (map.power_law()) {
    const double hw = map.power_law_half_width();
    if (!(src.lo > -hw && src.hi < hw))
      throw std::domain_error(
          "transform_switching: switching support must lie inside (-pi/2omega, pi/2omega) "
          "when Omega = 0");
  }
  auto impl = std::make_shared<SwitchingFunction::Impl>();
  impl->kind = SwitchingFunction::Kind::transported;
  impl->source = chi.impl_;
  impl->map = map;
  impl->exponent = 0.5 * (map.n_spatial() - 4);
  impl->support = {tau_of_lambda(map, src.lo), tau_of_lambda(map, src.hi)};
  return SwitchingFunction(std::move(impl));
}

}  // namespace udw
