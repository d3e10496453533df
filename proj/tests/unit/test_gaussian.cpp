#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "udw/gaussian.hpp"

using namespace udw;
using std::numbers::pi;

TEST_CASE("sym_rotation") {
  CHECK(max_abs_entry(sym_rotation(3.0, 0.0).m - Eigen::Matrix2d::Identity()) == 0.0);
  Eigen::Matrix2d quarter;
  quarter << 0, 1, -1, 0;
  CHECK(max_abs_entry(sym_rotation(1.0, pi / 2).m - quarter) <= 1e-15);

  // Hamiltonian flow d/dl (q, p) = (p, -w^2 q).
  const double w = 2.0, l = 0.3;
  Eigen::Matrix2d gen;
  gen << 0, 1, -w * w, 0;
  const Eigen::Matrix2d expm = (gen * l).exp();
  const SymplecticMap r = sym_rotation(w, l);
  CHECK(max_abs_entry(r.m - expm) <= 1e-12);
  CHECK(std::abs(r.det() - 1.0) <= 1e-12);
}

TEST_CASE("sym_shear_scale") {
  CHECK(max_abs_entry(sym_shear_scale(0, 0).m - Eigen::Matrix2d::Identity()) == 0.0);
  const Eigen::Matrix2d d = sym_shear_scale(std::log(2.0), 0.0).m;
  CHECK(d(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d(1, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d(0, 1) == 0.0);
  CHECK(d(1, 0) == 0.0);
  const double w = 1.0, l = 0.4;
  CHECK(std::abs(sym_shear_scale(std::log(std::cos(w * l)), w * std::tan(w * l)).det() - 1.0) <= 1e-14);
}

TEST_CASE("free particle identity") {
  CHECK(takagi_free_particle_residual(1.0, 0.0) == 0.0);
  CHECK(takagi_free_particle_residual(1.0, 0.7) <= 1e-12);
  double worst = 0.0;
  for (double l : principal_branch_grid(3.0, 50)) worst = std::max(worst, takagi_free_particle_residual(3.0, l));
  CHECK(worst <= 1e-12);
  CHECK(takagi_free_particle_residual(1.0, 0.7, ShearSign::flipped) > 1e-3);
}

TEST_CASE("cross identity") {
  CHECK(takagi_cross_identity_residual(1.3, 1.3, 0.4) <= 1e-14);
  CHECK(takagi_cross_identity_residual(1.0, 2.0, 0.5) <= 1e-12);
  double worst = 0.0;
  for (double l : principal_branch_grid(0.5, 50)) worst = std::max(worst, takagi_cross_identity_residual(0.5, 3.0, l));
  CHECK(worst <= 1e-12);
}

TEST_CASE("heisenberg q relation") {
  CHECK(heisenberg_q_relation_residual(1.5, 1.5, 0.8) <= 1e-15);
  CHECK(heisenberg_q_relation_residual(1.0, 2.0, 0.3) <= 1e-12);
  CHECK(heisenberg_q_relation_residual(2.0, 0.5, -0.9) <= 1e-12);
  CHECK_THROWS_AS(heisenberg_q_relation_residual(1.0, 0.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(takagi_cross_identity_residual(1.0, 2.0, 2.0), std::domain_error);
}

TEST_CASE("suite over the default grid") {
  const TakagiSuiteResult r = run_takagi_suite({0.5, 1, 2}, {0.5, 1.5, 3}, 50);
  CHECK(r.points == 450);
  CHECK(r.passed());
  CHECK_FALSE(run_takagi_suite({0.5, 1, 2}, {0.5, 1.5, 3}, 50, ShearSign::flipped).passed());
}

TEST_CASE("vacuum bogoliubov") {
  const BogoliubovPair id = vacuum_bogoliubov(1.7, 1.7);
  CHECK(std::abs(id.alpha - 1.0) <= 1e-15);
  CHECK(std::abs(id.beta) <= 1e-15);

  const double w = 1.0, W = 4.0, k = std::sqrt(W / w);
  const BogoliubovPair p = vacuum_bogoliubov(w, W);
  CHECK(std::abs(p.alpha - 0.5 * (1 + w / W) * k) <= 1e-14);
  CHECK(std::abs(p.beta - 0.5 * (1 - w / W) * k) <= 1e-14);
  CHECK(std::abs(vacuum_bogoliubov(2.0, 1.0).normalization() - 1.0) <= 1e-10);
  CHECK_THROWS_AS(vacuum_bogoliubov(1.0, 0.0), std::invalid_argument);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int i = 0; i < 20; ++i) CHECK(std::abs(vacuum_bogoliubov(dist(rng), dist(rng)).normalization() - 1.0) <= 1e-10);
}

TEST_CASE("transported mode solves the Omega oscillator equation") {
  for (auto [w, W] : {std::pair{1.0, 4.0}, std::pair{2.0, 0.5}, std::pair{1.0, 2.0}}) {
    const ConformalTakagiMap map(w, W);
    CHECK(std::abs(transported_mode(map, 0.0) - 1.0) <= 1e-15);
    CHECK(std::abs(transported_mode_derivative(map, 0.0) - std::complex<double>(0, w)) <= 1e-12);
    const double h = 1e-3;
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = -3.0 + 0.03 * i;
      const auto u = transported_mode(map, t);
      const auto upp = (transported_mode(map, t + h) - 2.0 * u + transported_mode(map, t - h)) / (h * h);
      worst = std::max(worst, std::abs(upp + W * W * u));
      scale = std::max(scale, W * W * std::abs(u));
      const auto fd = (transported_mode(map, t + h) - transported_mode(map, t - h)) / (2 * h);
      CHECK(std::abs(fd - transported_mode_derivative(map, t)) <= 1e-5 * (1 + std::abs(fd)));
    }
    CHECK(worst / scale <= 1e-5);

    // Same mode expressed through the Bogoliubov pair.
    const BogoliubovPair b = vacuum_bogoliubov(w, W);
    const double k = std::sqrt(w / W);
    for (double t : {-1.1, 0.4, 2.5}) {
      const auto rhs = k * (b.alpha * std::polar(1.0, W * t) + b.beta * std::polar(1.0, -W * t));
      CHECK(std::abs(transported_mode(map, t) - rhs) <= 1e-12);
    }
  }
}
