#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "udw/detector.hpp"
#include "udw/field.hpp"
#include "udw/quadrature.hpp"

using namespace udw;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

QuadratureConfig tight() {
  QuadratureConfig c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-14;
  return c;
}

IntegralResult at(double eps, cplx v, double err = 0.0) {
  IntegralResult r;
  r.value = v;
  r.epsilon_used = eps;
  r.err_estimate = err;
  return r;
}

}  // namespace

TEST_CASE("one dimensional adaptive") {
  const auto r = integrate_adaptive([](double x) { return cplx(std::exp(x), 0.0); }, 0.0, 1.0, {}, 1e-13, 1e-15, 100);
  CHECK(r.value.real() == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(r.converged);
  const std::vector<double> bp{0.5};
  const auto kink = integrate_adaptive([](double x) { return cplx(std::abs(x - 0.5), 0.0); }, 0.0, 1.0, bp, 1e-13,
                                       1e-15, 100);
  CHECK(kink.value.real() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(integrate_adaptive([](double) { return cplx(std::nan(""), 0.0); }, 0.0, 1.0, {}, 1e-8, 1e-15, 10),
                  NumericalError);
}

TEST_CASE("tolerance failures are reported, not hidden") {
  const auto r = integrate_adaptive([](double x) { return cplx(std::sin(1.0 / (x + 1e-6)), 0.0); }, 0.0, 1.0, {},
                                    1e-14, 1e-16, 5);
  CHECK_FALSE(r.converged);
  CHECK(r.err_estimate > 0.0);
}

TEST_CASE("square integrals") {
  const Rectangle unit{0, 1, 0, 1, {}, {}};
  const auto one = integrate_square([](double, double) { return cplx(1.0, 0.0); }, unit, tight());
  CHECK(std::abs(one.value - 1.0) <= 1e-12);

  QuadratureConfig c = tight();
  const Rectangle period{0, 2 * pi, 0, 2 * pi, {}, {}};
  const auto osc = integrate_square([](double u, double v) { return std::polar(1.0, u - v); }, period, c);
  CHECK(std::abs(osc.value) <= 1e-12);
}

TEST_CASE("ordered integrals") {
  const Rectangle unit{0, 1, 0, 1, {}, {}};
  CHECK(std::abs(integrate_ordered([](double, double) { return cplx(1.0, 0.0); }, unit, tight()).value - 0.5) <= 1e-12);
  CHECK(std::abs(integrate_ordered([](double u, double v) { return cplx(u * v, 0.0); }, unit, tight()).value - 0.125) <=
        1e-12);

  auto f = [](double u, double v) { return std::polar(std::cos(u * v), 3 * u - 2 * v); };
  auto ft = [&](double u, double v) { return f(v, u); };
  const Rectangle box{0, 2, 0, 2, {}, {}};
  const auto sq = integrate_square(f, box, tight());
  const auto lower = integrate_ordered(f, box, tight());
  const auto upper = integrate_ordered(ft, box, tight());
  CHECK(std::abs(lower.value + upper.value - sq.value) <= 1e-8);
}

TEST_CASE("regulated kernel matches a fine one dimensional reduction") {
  // chi gaussian, u - v = s: int du chi(u) chi(u - s) = sqrt(pi) e^{-s^2/4}.
  const double L = 5.0, eps = 1e-3, w = 1.0;
  const auto chi = SwitchingFunction::gaussian(1.0);
  auto kernel = [&](double u, double v) {
    return chi(u) * chi(v) * std::polar(1.0, -w * (u - v)) * wightman_flat({v, {0, 0, 0}}, {u, {L, 0, 0}}, eps);
  };
  Rectangle box{-8, 8, -8, 8, {}, [&](double u, std::vector<double>& out) {
                  out.push_back(u - L);
                  out.push_back(u + L);
                }};
  QuadratureConfig c;
  c.rel_tol = 1e-9;
  c.abs_tol = 1e-18;
  const auto direct = integrate_square(kernel, box, c);

  auto reduced = [&](double s) {
    return std::sqrt(pi) * std::exp(-s * s / 4) * std::polar(1.0, -w * s) *
           wightman_flat({0.0, {0, 0, 0}}, {s, {L, 0, 0}}, eps);
  };
  const int n = 3'200'000;
  const double a = -16.0, h = 32.0 / n;
  cplx simpson = reduced(a) + reduced(a + n * h);
  for (int i = 1; i < n; ++i) simpson += (i % 2 ? 4.0 : 2.0) * reduced(a + i * h);
  simpson *= h / 3.0;
  CHECK(std::abs(direct.value - simpson) <= 1e-5 * std::abs(simpson));
}

TEST_CASE("epsilon extrapolation") {
  const std::vector<IntegralResult> same{at(0.4, {2, 1}), at(0.2, {2, 1}), at(0.1, {2, 1})};
  const auto s = extrapolate_epsilon(same);
  CHECK(s.value == cplx(2, 1));
  CHECK(s.err_estimate == 0.0);
  CHECK(s.extrapolated);

  std::vector<IntegralResult> lin;
  for (double e : {0.08, 0.04, 0.02, 0.01}) lin.push_back(at(e, cplx(1.5, -0.5) + cplx(3.0, 2.0) * e));
  const auto l = extrapolate_epsilon(lin);
  CHECK(std::abs(l.value - cplx(1.5, -0.5)) <= 1e-14);
  CHECK(l.converged);

  std::vector<IntegralResult> div;
  for (double e : {0.08, 0.04, 0.02, 0.01}) div.push_back(at(e, 1.0 / e, 1e-10));
  const auto d = extrapolate_epsilon(div);
  CHECK_FALSE(d.converged);
  CHECK(d.value == cplx(100.0, 0.0));
  CHECK(d.err_estimate >= 100.0 - 12.5);

  const std::vector<IntegralResult> two{at(0.2, 1.0), at(0.1, 1.0)};
  CHECK_THROWS_AS(extrapolate_epsilon(two), std::invalid_argument);
  const std::vector<IntegralResult> unordered{at(0.1, 1.0), at(0.2, 1.0), at(0.05, 1.0)};
  CHECK_THROWS_AS(extrapolate_epsilon(unordered), std::invalid_argument);

  const auto ratios = successive_difference_ratios(lin);
  REQUIRE(ratios.size() == 2);
  CHECK(ratios[0] == doctest::Approx(0.5));
}

TEST_CASE("quadrature config validation") {
  QuadratureConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.epsilons_for(2.0).size() == 6);
  CHECK(c.epsilons_for(2.0)[1] == doctest::Approx(0.01));
  c.epsilon_sequence = {0.1, 0.2, 0.05};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.epsilon_sequence = {0.1, 0.05};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.extrapolation = Extrapolation::none;
  CHECK_NOTHROW(c.validate());
  c.rel_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("fourier oracle") {
  const auto g = SwitchingFunction::gaussian(1.0);
  const auto a0 = DetectorSpec::qubit('A', 1.0, 0.0, {0, 0, 0}, g);
  const auto b = DetectorSpec::qubit('B', 1.0, 0.01, {5, 0, 0}, g);
  CHECK(fourier_oracle_L(a0, b, {}).value == cplx(0.0, 0.0));

  // Self term: (c^2 / 2 pi) int_0^inf k e^{-(1 + k)^2} dk.
  const auto a = DetectorSpec::qubit('A', 1.0, 0.01, {0, 0, 0}, g);
  const double closed = 1e-4 / (2 * pi) * (0.5 * std::exp(-1.0) - 0.5 * std::sqrt(pi) * std::erfc(1.0));
  const auto self = fourier_oracle_L(a, a, {});
  CHECK(std::abs(self.value - closed) <= 1e-10 * closed);
  CHECK(self.err_estimate <= 1e-8 * closed);

  double prev = INFINITY;
  for (double w : {1.0, 2.0, 4.0, 8.0}) {
    const auto d = DetectorSpec::qubit('A', w, 0.01, {0, 0, 0}, SwitchingFunction::cos_squared(-0.5, 0.5));
    const double v = fourier_oracle_L(d, d, {}).value.real();
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}
