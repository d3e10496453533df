#include "udw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace udw {

namespace {

using cplx = std::complex<double>;

struct Sample {
  cplx value;
  double err;  // absolute uncertainty of the sample itself (nested integrals)
};

struct Panel {
  double a, b;
  cplx value;
  double err;         // rule error
  double sample_err;  // integrated sample uncertainty
  bool frozen = false;
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

// G7/K15 on [a, b] with the QUADPACK error scaling.
template <class F>
Panel gk15(const F& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<cplx, 15> fv;
  double serr = 0.0;

  const Sample s0 = f(c);
  fv[0] = s0.value;
  cplx rk = wk[0] * s0.value;
  cplx rg = wg[0] * s0.value;
  serr += wk[0] * s0.err;
  for (std::size_t j = 1; j < xk.size(); ++j) {
    const double x = h * xk[j];
    const Sample lo = f(c - x);
    const Sample hi = f(c + x);
    fv[2 * j - 1] = lo.value;
    fv[2 * j] = hi.value;
    const cplx sum = lo.value + hi.value;
    rk += wk[j] * sum;
    serr += wk[j] * (lo.err + hi.err);
    if (j % 2 == 0) rg += wg[j / 2] * sum;
  }
  if (!std::isfinite(rk.real()) || !std::isfinite(rk.imag()))
    throw NumericalError("quadrature: non-finite integrand value");

  const cplx mean = 0.5 * rk;
  double resasc = wk[0] * std::abs(fv[0] - mean);
  double resabs = wk[0] * std::abs(fv[0]);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    resasc += wk[j] * (std::abs(fv[2 * j - 1] - mean) + std::abs(fv[2 * j] - mean));
    resabs += wk[j] * (std::abs(fv[2 * j - 1]) + std::abs(fv[2 * j]));
  }
  resasc *= std::abs(h);
  resabs *= std::abs(h);

  double err = std::abs(h * (rk - rg));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  err = std::max(err, 50.0 * kEps * resabs);
  return {a, b, h * rk, err, std::abs(h) * serr};
}

template <class F>
IntegralResult adaptive(const F& f, double a, double b, std::span<const double> breakpoints, double rel_tol,
                        double abs_tol, int max_subdivisions) {
  IntegralResult out;
  if (a == b) return out;
  if (b < a) {
    out = adaptive(f, b, a, breakpoints, rel_tol, abs_tol, max_subdivisions);
    out.value = -out.value;
    return out;
  }

  std::vector<double> edges{a};
  std::vector<double> inner(breakpoints.begin(), breakpoints.end());
  std::sort(inner.begin(), inner.end());
  for (double x : inner)
    if (x > edges.back() && x < b) edges.push_back(x);
  edges.push_back(b);

  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(max_subdivisions) + edges.size());
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    panels.push_back(gk15(f, edges[i], edges[i + 1]));
    err_total += panels.back().err;
  }

  auto total_value = [&] {
    cplx s = 0.0;
    for (const Panel& p : panels) s += p.value;
    return s;
  };

  while (true) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(total_value()));
    if (err_total <= tol) break;
    if (static_cast<int>(panels.size()) >= max_subdivisions) break;

    std::size_t worst = panels.size();
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (panels[i].frozen) continue;
      if (worst == panels.size() || panels[i].err > panels[worst].err) worst = i;
    }
    if (worst == panels.size()) break;

    Panel& p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 64.0 * kEps * std::max(std::abs(p.a), std::abs(p.b))) {
      p.frozen = true;
      continue;
    }
    Panel left = gk15(f, p.a, mid);
    Panel right = gk15(f, mid, p.b);
    err_total += left.err + right.err - p.err;
    panels[worst] = left;
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, right);
  }

  double rule_err = 0.0, sample_err = 0.0;
  for (const Panel& p : panels) {
    out.value += p.value;
    rule_err += p.err;
    sample_err += p.sample_err;
  }
  out.err_estimate = rule_err + sample_err;
  out.converged = rule_err <= std::max(abs_tol, rel_tol * std::abs(out.value));
  return out;
}

IntegralResult nested(const Kernel2D& f, const Rectangle& d, const QuadratureConfig& cfg, bool ordered) {
  cfg.validate();
  if (!(d.u1 >= d.u0 && d.v1 >= d.v0)) throw std::invalid_argument("integrate: empty or inverted rectangle");

  double u_lo = d.u0;
  std::vector<double> u_breaks = d.u_breakpoints;
  if (ordered) {
    u_lo = std::max(d.u0, d.v0);
    if (u_lo >= d.u1) return {};
    u_breaks.push_back(d.v1);
  }

  const double inner_rel = 0.25 * cfg.rel_tol;
  bool inner_ok = true;
  // Largest inner value seen so far; keeps the inner tolerance finite near zeros of the inner integral.
  double scale = 0.0;
  auto outer = [&](double u) -> Sample {
    const double v_hi = ordered ? std::min(d.v1, u) : d.v1;
    if (v_hi <= d.v0) return {0.0, 0.0};
    std::vector<double> bps;
    if (d.v_breakpoints) d.v_breakpoints(u, bps);
    auto g = [&](double v) -> Sample { return {f(u, v), 0.0}; };
    const double abs_inner = std::max(cfg.abs_tol, 1e-3 * inner_rel * scale);
    const IntegralResult r = adaptive(g, d.v0, v_hi, bps, inner_rel, abs_inner, cfg.max_subdivisions);
    if (!r.converged) inner_ok = false;
    scale = std::max(scale, std::abs(r.value));
    return {r.value, r.err_estimate};
  };
  IntegralResult r = adaptive(outer, u_lo, d.u1, u_breaks, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  r.converged = r.converged && inner_ok;
  return r;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && abs_tol > 0.0)) throw std::invalid_argument("quadrature: tolerances must be > 0");
  if (max_subdivisions < 1) throw std::invalid_argument("quadrature: max_subdivisions must be >= 1");
  for (std::size_t i = 0; i < epsilon_sequence.size(); ++i) {
    if (!(epsilon_sequence[i] > 0.0)) throw std::invalid_argument("quadrature: epsilon_sequence must be positive");
    if (i > 0 && !(epsilon_sequence[i] < epsilon_sequence[i - 1]))
      throw std::invalid_argument("quadrature: epsilon_sequence must be strictly decreasing");
  }
  if (!(epsilon_scale > 0.0)) throw std::invalid_argument("quadrature: epsilon_scale must be > 0");
  if (epsilon_levels < 1) throw std::invalid_argument("quadrature: epsilon_levels must be >= 1");
  const std::size_t levels =
      epsilon_sequence.empty() ? static_cast<std::size_t>(epsilon_levels) : epsilon_sequence.size();
  if (extrapolation == Extrapolation::richardson && levels < 3)
    throw std::invalid_argument("quadrature: richardson extrapolation needs at least 3 regulators");
}

std::vector<double> QuadratureConfig::epsilons_for(double timescale) const {
  if (!epsilon_sequence.empty()) return epsilon_sequence;
  if (!(timescale > 0.0)) throw std::invalid_argument("quadrature: switching timescale must be > 0");
  std::vector<double> eps;
  const double eps0 = epsilon_scale * timescale;
  for (int k = 0; k < epsilon_levels; ++k) eps.push_back(std::ldexp(eps0, -k));
  return eps;
}

IntegralResult integrate_adaptive(const Integrand1D& f, double a, double b, std::span<const double> breakpoints,
                                  double rel_tol, double abs_tol, int max_subdivisions) {
  auto g = [&](double x) -> Sample { return {f(x), 0.0}; };
  return adaptive(g, a, b, breakpoints, rel_tol, abs_tol, max_subdivisions);
}

IntegralResult integrate_square(const Kernel2D& f, const Rectangle& domain, const QuadratureConfig& cfg) {
  return nested(f, domain, cfg, false);
}

IntegralResult integrate_ordered(const Kernel2D& f, const Rectangle& domain, const QuadratureConfig& cfg) {
  return nested(f, domain, cfg, true);
}

std::vector<double> successive_difference_ratios(std::span<const IntegralResult> results) {
  std::vector<double> ratios;
  for (std::size_t k = 2; k < results.size(); ++k) {
    const double prev = std::abs(results[k - 1].value - results[k - 2].value);
    const double last = std::abs(results[k].value - results[k - 1].value);
    ratios.push_back(prev == 0.0 ? (last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()) : last / prev);
  }
  return ratios;
}

IntegralResult extrapolate_epsilon(std::span<const IntegralResult> results) {
  const std::size_t n = results.size();
  if (n < 3) throw std::invalid_argument("extrapolate_epsilon: need at least 3 regulated results");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(results[i].epsilon_used > 0.0))
      throw std::invalid_argument("extrapolate_epsilon: regulators must be positive");
    if (i > 0 && !(results[i].epsilon_used < results[i - 1].epsilon_used))
      throw std::invalid_argument("extrapolate_epsilon: regulators must be strictly decreasing");
  }

  double max_err = 0.0;
  bool inputs_ok = true;
  for (const auto& r : results) {
    max_err = std::max(max_err, r.err_estimate);
    inputs_ok = inputs_ok && r.converged;
  }

  // Growing differences: the eps -> 0 limit is not approached (e.g. a UV-divergent element).
  const double last = std::abs(results[n - 1].value - results[n - 2].value);
  const double prev = std::abs(results[n - 2].value - results[n - 3].value);
  if (last > 10.0 * max_err && last > prev) {
    IntegralResult flagged = results[n - 1];
    flagged.err_estimate = std::abs(results[n - 1].value - results[0].value) + max_err;
    flagged.extrapolated = false;
    flagged.converged = false;
    return flagged;
  }

  // Neville table evaluated at eps = 0; row i uses results[0..i].
  std::vector<cplx> row(n), prev_row(n);
  cplx best = results[0].value, second = results[0].value;
  for (std::size_t i = 0; i < n; ++i) {
    row[0] = results[i].value;
    for (std::size_t j = 1; j <= i; ++j) {
      const double ei = results[i].epsilon_used;
      const double ej = results[i - j].epsilon_used;
      row[j] = row[j - 1] + (row[j - 1] - prev_row[j - 1]) * (ei / (ej - ei));
    }
    if (i == n - 1) {
      best = row[i];
      second = row[i - 1];
    }
    std::swap(row, prev_row);
  }

  IntegralResult out;
  out.value = best;
  out.err_estimate = std::abs(best - second) + max_err;
  out.epsilon_used = 0.0;
  out.extrapolated = true;
  out.converged = inputs_ok;
  return out;
}

}  // namespace udw
