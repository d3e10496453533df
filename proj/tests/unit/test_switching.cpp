#include <cmath>
#include <numbers>

#include "doctest.h"
#include "udw/quadrature.hpp"
#include "udw/switching.hpp"

using namespace udw;
using std::numbers::pi;

TEST_CASE("gaussian switching") {
  const auto g = SwitchingFunction::gaussian(0.5, 1.0);
  CHECK(g(1.0) == 1.0);
  CHECK(g(1.5) == doctest::Approx(std::exp(-0.5)));
  CHECK(g.support().lo == -3.0);
  CHECK(g.support().hi == 5.0);
  CHECK(g(5.01) == 0.0);
  CHECK(g.timescale() == 0.5);
  CHECK_THROWS_AS(SwitchingFunction::gaussian(0.0), std::invalid_argument);
}

TEST_CASE("cos squared switching") {
  const auto c = SwitchingFunction::cos_squared(-0.5, 0.5);
  CHECK(c(0.0) == 1.0);
  CHECK(c(0.25) == doctest::Approx(0.5));
  CHECK(c(-0.5) == 0.0);
  CHECK(c(0.7) == 0.0);
  CHECK(c.timescale() == 1.0);
  CHECK_THROWS_AS(SwitchingFunction::cos_squared(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("tabulated switching interpolates its samples") {
  std::vector<double> s;
  for (int i = 0; i <= 40; ++i) {
    const double x = -2.0 + 0.1 * i;
    s.push_back(std::exp(-x * x));
  }
  const auto t = SwitchingFunction::tabulated(-2.0, 0.1, s);
  for (int i = 0; i <= 40; ++i) CHECK(t(-2.0 + 0.1 * i) == doctest::Approx(s[i]).epsilon(1e-9));
  CHECK(t(0.05) == doctest::Approx(std::exp(-0.0025)).epsilon(1e-4));
  CHECK(t(2.5) == 0.0);
  CHECK_THROWS_AS(SwitchingFunction::tabulated(0.0, 0.1, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("fourier transforms match direct quadrature") {
  for (const auto& chi : {SwitchingFunction::gaussian(0.7, 0.3), SwitchingFunction::cos_squared(-0.5, 1.0)}) {
    for (double nu : {0.0, 1.3, -4.0, 9.0}) {
      const Support s = chi.support();
      const auto direct = integrate_adaptive([&](double x) { return chi(x) * std::polar(1.0, nu * x); }, s.lo, s.hi,
                                             {}, 1e-12, 1e-15, 2000);
      CHECK(std::abs(chi.fourier(nu) - direct.value) <= 1e-10);
    }
  }
  std::vector<double> s;
  for (int i = 0; i <= 60; ++i) s.push_back(std::pow(std::sin(pi * i / 60.0), 4));
  const auto tab = SwitchingFunction::tabulated(0.0, 1.0 / 60.0, s);
  for (double nu : {0.0, 5.0}) {
    const auto direct = integrate_adaptive([&](double x) { return tab(x) * std::polar(1.0, nu * x); }, 0.0, 1.0, {},
                                           1e-12, 1e-15, 2000);
    CHECK(std::abs(tab.fourier(nu) - direct.value) <= 1e-9);
  }
}
