#include "udw/harvesting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "udw/parallel.hpp"

namespace udw {

namespace {

using cplx = std::complex<double>;

WightmanKernel kernel_for(const DetectorSpec& d, double epsilon) {
  return d.trajectory.frw ? WightmanKernel::frw(*d.trajectory.frw, epsilon) : WightmanKernel::minkowski(epsilon);
}

// Proper times of b at which its worldline crosses the light cone of a(u).
InnerBreakpoints light_cone_breaks(const DetectorSpec& a, const DetectorSpec& b) {
  const double r = distance(a.trajectory.position, b.trajectory.position);
  const StaticTrajectory ta = a.trajectory;
  const StaticTrajectory tb = b.trajectory;
  return [ta, tb, r](double u, std::vector<double>& out) {
    const double t = ta.conformal_time(u);
    if (auto v = tb.proper_time(t - r)) out.push_back(*v);
    if (r > 0.0)
      if (auto v = tb.proper_time(t + r)) out.push_back(*v);
  };
}

Rectangle domain_for(const DetectorSpec& outer, const DetectorSpec& inner) {
  Rectangle d;
  const Support su = outer.switching.support();
  const Support sv = inner.switching.support();
  d.u0 = su.lo;
  d.u1 = su.hi;
  d.v0 = sv.lo;
  d.v1 = sv.hi;
  d.v_breakpoints = light_cone_breaks(outer, inner);
  return d;
}

// Detector factor and event at the current outer node; the nested quadrature visits
// every inner node for one u before moving on.
struct OuterCache {
  double u = std::numeric_limits<double>::quiet_NaN();
  cplx profile;
  SpacetimePoint event{};
};

IntegralResult scaled(IntegralResult r, double factor) {
  r.value *= factor;
  r.err_estimate *= std::abs(factor);
  return r;
}

IntegralResult zero_result() { return IntegralResult{}; }

enum class Job { L_AA, L_BB, L_AB, M_AB, M_BA, N_A, N_B };

IntegralResult run_job(Job job, const HarvestScenario& s, double eps) {
  const QuadratureConfig& q = s.quadrature;
  switch (job) {
    case Job::L_AA: return l_integral(s.a, s.a, eps, q);
    case Job::L_BB: return l_integral(s.b, s.b, eps, q);
    case Job::L_AB: return l_integral(s.a, s.b, eps, q);
    case Job::M_AB: return ordered_integral(s.a, s.b, eps, q);
    case Job::M_BA: return ordered_integral(s.b, s.a, eps, q);
    case Job::N_A: return ordered_integral(s.a, s.a, eps, q);
    case Job::N_B: return ordered_integral(s.b, s.b, eps, q);
  }
  return {};
}

// Collapses a regulator ladder into one value.
IntegralResult limit(std::vector<IntegralResult> ladder, const QuadratureConfig& q) {
  if (q.extrapolation == Extrapolation::richardson) return extrapolate_epsilon(ladder);
  return ladder.back();
}

struct ElementPlan {
  std::vector<Job> parts;  // summed per regulator
  double factor = 0.0;
  bool fourier = false;
  const DetectorSpec* fa = nullptr;
  const DetectorSpec* fb = nullptr;
};

void evaluate(const HarvestScenario& s, const std::vector<ElementPlan>& plans,
                        const std::vector<IntegralResult*>& targets, int threads) {
  const std::vector<double> eps = s.epsilons();

  struct Task {
    std::size_t plan;
    std::size_t part;
    std::size_t level;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < plans.size(); ++p) {
    if (plans[p].factor == 0.0) continue;
    if (plans[p].fourier) {
      tasks.push_back({p, 0, 0});
      continue;
    }
    for (std::size_t j = 0; j < plans[p].parts.size(); ++j)
      for (std::size_t k = 0; k < eps.size(); ++k) tasks.push_back({p, j, k});
  }

  const auto results = parallel_map(tasks.size(), threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    const ElementPlan& plan = plans[t.plan];
    if (plan.fourier) {
      QuadratureConfig unit = s.quadrature;
      DetectorSpec a = *plan.fa, b = *plan.fb;
      a.coupling = 1.0;
      b.coupling = 1.0;
      return fourier_oracle_L(a, b, unit);
    }
    IntegralResult r = run_job(plan.parts[t.part], s, eps[t.level]);
    r.epsilon_used = eps[t.level];
    return r;
  });

  std::size_t cursor = 0;
  for (std::size_t p = 0; p < plans.size(); ++p) {
    const ElementPlan& plan = plans[p];
    IntegralResult& target = *targets[p];
    if (plan.factor == 0.0) {
      target = zero_result();
      continue;
    }
    if (plan.fourier) {
      target = scaled(results[cursor++], plan.factor);
      continue;
    }
    std::vector<IntegralResult> ladder(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) ladder[k].epsilon_used = eps[k];
    for (std::size_t j = 0; j < plan.parts.size(); ++j) {
      for (std::size_t k = 0; k < eps.size(); ++k) {
        const IntegralResult& r = results[cursor++];
        ladder[k].value += r.value;
        ladder[k].err_estimate += r.err_estimate;
        ladder[k].converged = ladder[k].converged && r.converged;
      }
    }
    target = scaled(limit(std::move(ladder), s.quadrature), plan.factor);
  }
}

double max_element_magnitude(const MatrixElements& e) {
  double m = std::max({std::abs(e.L_AA.value), std::abs(e.L_BB.value), std::abs(e.L_AB.value),
                       std::abs(e.M.value)});
  if (e.has_N) m = std::max({m, std::abs(e.N_A.value), std::abs(e.N_B.value)});
  return m;
}

// Occupation numbers (n_A, n_B) of each basis vector.
std::vector<std::array<int, 2>> basis_of(DetectorModel model) {
  if (model == DetectorModel::qubit) return {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  return {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
}

}  // namespace

void HarvestScenario::validate() const {
  if (a.label != 'A' || b.label != 'B') throw std::invalid_argument("scenario: detectors must be labelled A and B");
  a.validate();
  b.validate();
  if (a.model != b.model) throw std::invalid_argument("scenario: both detectors must use the same model");
  if (a.trajectory.frw != b.trajectory.frw) throw std::invalid_argument("scenario: detectors must share one frame");
  quadrature.validate();
  if (l_method == LMethod::fourier && (is_frw() || a.squeezed || b.squeezed))
    throw std::invalid_argument("scenario: the Fourier method needs static flat ground-state detectors");
}

std::vector<double> HarvestScenario::epsilons() const {
  return quadrature.epsilons_for(std::min(a.switching.timescale(), b.switching.timescale()));
}

std::string HarvestScenario::frame_name() const {
  if (!is_frw()) return "minkowski";
  std::ostringstream os;
  os.precision(17);
  os << "frw(omega=" << a.trajectory.frw->omega() << ", Omega=" << a.trajectory.frw->Omega() << ")";
  return os.str();
}

IntegralResult l_integral(const DetectorSpec& a, const DetectorSpec& b, double epsilon,
                          const QuadratureConfig& cfg) {
  const WightmanKernel W = kernel_for(a, epsilon);
  OuterCache cache;
  Kernel2D f = [&](double u, double v) -> cplx {
    if (u != cache.u) {
      cache.u = u;
      cache.profile = a.profile(u);
      cache.event = a.trajectory.event(u);
    }
    if (cache.profile == 0.0) return 0.0;
    const cplx pb = b.profile(v);
    if (pb == 0.0) return 0.0;
    return cache.profile * std::conj(pb) * W(b.trajectory.event(v), cache.event);
  };
  IntegralResult r = integrate_square(f, domain_for(a, b), cfg);
  r.epsilon_used = epsilon;
  return r;
}

IntegralResult ordered_integral(const DetectorSpec& a, const DetectorSpec& b, double epsilon,
                                const QuadratureConfig& cfg) {
  const WightmanKernel W = kernel_for(a, epsilon);
  OuterCache cache;
  Kernel2D f = [&](double u, double v) -> cplx {
    if (u != cache.u) {
      cache.u = u;
      cache.profile = a.profile(u);
      cache.event = a.trajectory.event(u);
    }
    if (cache.profile == 0.0) return 0.0;
    const cplx pb = b.profile(v);
    if (pb == 0.0) return 0.0;
    return cache.profile * pb * W(cache.event, b.trajectory.event(v));
  };
  IntegralResult r = integrate_ordered(f, domain_for(a, b), cfg);
  r.epsilon_used = epsilon;
  return r;
}

IntegralResult compute_L(const DetectorSpec& a, const DetectorSpec& b, const HarvestScenario& s, int threads) {
  HarvestScenario pair = s;
  pair.a = a;
  pair.b = b;
  ElementPlan plan{{Job::L_AB}, a.coupling * b.coupling};
  plan.fourier = s.l_method == LMethod::fourier;
  plan.fa = &pair.a;
  plan.fb = &pair.b;
  IntegralResult out;
  evaluate(pair, {plan}, {&out}, threads);
  return out;
}

IntegralResult compute_M(const HarvestScenario& s, int threads) {
  s.validate();
  ElementPlan plan{{Job::M_AB, Job::M_BA}, -(s.a.coupling * s.b.coupling)};
  IntegralResult out;
  evaluate(s, {plan}, {&out}, threads);
  return out;
}

IntegralResult compute_N(const DetectorSpec& d, const HarvestScenario& s, int threads) {
  if (d.model != DetectorModel::oscillator) throw std::invalid_argument("compute_N: oscillator detectors only");
  HarvestScenario pair = s;
  pair.a = d;
  pair.a.label = 'A';
  ElementPlan plan{{Job::N_A}, -std::sqrt(2.0) * (d.coupling * d.coupling)};
  IntegralResult out;
  evaluate(pair, {plan}, {&out}, threads);
  return out;
}

MatrixElements compute_elements(const HarvestScenario& s, int threads) {
  s.validate();
  MatrixElements e;
  e.has_N = s.model() == DetectorModel::oscillator;
  const bool fourier = s.l_method == LMethod::fourier;

  auto l_plan = [&](Job job, const DetectorSpec& x, const DetectorSpec& y) {
    ElementPlan p{{job}, x.coupling * y.coupling};
    p.fourier = fourier;
    p.fa = &x;
    p.fb = &y;
    return p;
  };
  std::vector<ElementPlan> plans{l_plan(Job::L_AA, s.a, s.a), l_plan(Job::L_BB, s.b, s.b),
                                 l_plan(Job::L_AB, s.a, s.b),
                                 ElementPlan{{Job::M_AB, Job::M_BA}, -(s.a.coupling * s.b.coupling)}};
  std::vector<IntegralResult*> targets{&e.L_AA, &e.L_BB, &e.L_AB, &e.M};
  if (e.has_N) {
    plans.push_back(ElementPlan{{Job::N_A}, -std::sqrt(2.0) * (s.a.coupling * s.a.coupling)});
    plans.push_back(ElementPlan{{Job::N_B}, -std::sqrt(2.0) * (s.b.coupling * s.b.coupling)});
    targets.push_back(&e.N_A);
    targets.push_back(&e.N_B);
  }
  evaluate(s, plans, targets, threads);
  return e;
}

Eigen::MatrixXcd assemble_rho(const MatrixElements& e, DetectorModel model, std::vector<std::string>* warnings) {
  const bool osc = model == DetectorModel::oscillator;
  const int n = osc ? 6 : 4;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  const double laa = e.L_AA.value.real();
  const double lbb = e.L_BB.value.real();
  rho(0, 0) = 1.0 - laa - lbb;
  rho(0, 3) = std::conj(e.M.value);
  rho(1, 1) = laa;
  rho(1, 2) = e.L_AB.value;
  rho(2, 1) = std::conj(e.L_AB.value);
  rho(2, 2) = lbb;
  rho(3, 0) = e.M.value;
  if (osc) {
    rho(0, 4) = std::conj(e.N_A.value);
    rho(0, 5) = std::conj(e.N_B.value);
    rho(4, 0) = e.N_A.value;
    rho(5, 0) = e.N_B.value;
  }
  if (warnings && max_element_magnitude(e) > 0.1)
    warnings->push_back("a matrix element exceeds 0.1; the second-order state is outside its perturbative range");
  return rho;
}

std::pair<double, double> negativity_leading(const MatrixElements& e) {
  const double laa = e.L_AA.value.real();
  const double lbb = e.L_BB.value.real();
  const double m = std::abs(e.M.value);
  const double d = laa - lbb;
  const double E1 = 0.5 * (laa + lbb - std::sqrt(d * d + 4.0 * m * m));
  return {E1, std::max(-E1, 0.0)};
}

Eigen::VectorXd partial_transpose_spectrum(const Eigen::MatrixXcd& rho, DetectorModel model) {
  const auto basis = basis_of(model);
  if (rho.rows() != static_cast<Eigen::Index>(basis.size()) || rho.cols() != rho.rows())
    throw std::invalid_argument("partial_transpose_spectrum: rho has the wrong size for the model");
  const int levels = model == DetectorModel::qubit ? 2 : 3;
  const int dim = levels * levels;
  Eigen::MatrixXcd pt = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto [ai, bi] = basis[i];
      const auto [aj, bj] = basis[j];
      pt(levels * ai + bj, levels * aj + bi) = rho(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double negativity_pt_exact(const Eigen::MatrixXcd& rho, DetectorModel model) {
  const Eigen::VectorXd ev = partial_transpose_spectrum(rho, model);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < 0.0) neg -= ev[i];
  return neg;
}

double subleading_pt_eigenvalue(const Eigen::MatrixXcd& rho, DetectorModel model, double E1) {
  const Eigen::VectorXd ev = partial_transpose_spectrum(rho, model);
  Eigen::Index nearest = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (std::abs(ev[i] - E1) < std::abs(ev[nearest] - E1)) nearest = i;
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (i != nearest) m = std::min(m, ev[i]);
  return m;
}

HarvestReport harvest(const HarvestScenario& s, int threads, const std::string& picture) {
  HarvestReport r;
  r.model = s.model();
  r.elements = compute_elements(s, threads);
  r.rho = assemble_rho(r.elements, r.model, &r.warnings);
  std::tie(r.E1, r.negativity) = negativity_leading(r.elements);
  r.frame = s.frame_name();
  r.picture = picture;
  r.epsilons = s.epsilons();

  auto note = [&](const char* name, const IntegralResult& x) {
    if (!x.converged)
      r.warnings.push_back(std::string(name) +
                           ": tolerance not met or regulator sequence not settled; see err_estimate");
  };
  note("L_AA", r.elements.L_AA);
  note("L_BB", r.elements.L_BB);
  note("L_AB", r.elements.L_AB);
  note("M", r.elements.M);
  if (r.elements.has_N) {
    note("N_A", r.elements.N_A);
    note("N_B", r.elements.N_B);
  }
  return r;
}

HarvestScenario dualize(const HarvestScenario& flat, double Omega) {
  flat.validate();
  if (flat.is_frw()) throw std::invalid_argument("dualize: scenario must be in the flat frame");
  if (flat.model() != DetectorModel::oscillator) throw std::invalid_argument("dualize: oscillator detectors only");
  if (flat.a.squeezed || flat.b.squeezed) throw std::invalid_argument("dualize: detectors must start in the ground state");
  if (flat.a.frequency != flat.b.frequency)
    throw std::invalid_argument("dualize: both detectors must share one frequency");
  const double omega = flat.a.frequency;
  const ConformalTakagiMap map(omega, Omega);

  HarvestScenario dual = flat;
  dual.l_method = LMethod::direct;
  for (DetectorSpec* d : {&dual.a, &dual.b}) {
    d->frequency = Omega;
    d->switching = transform_switching(map, d->switching);
    d->trajectory.frw = map;
    d->interaction_scale = std::sqrt(2.0 * omega);
    d->squeezed = TakagiSqueezedState{map, Omega > 0.0 ? std::optional(vacuum_bogoliubov(omega, Omega)) : std::nullopt};
  }
  return dual;
}

double relative_residual(std::complex<double> a, std::complex<double> b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

DualCheck run_dual_check(const HarvestScenario& flat, double Omega, int threads) {
  return run_dual_check(flat, harvest(flat, threads, "flat"), Omega, threads);
}

DualCheck run_dual_check(const HarvestScenario& flat, const HarvestReport& flat_report, double Omega, int threads) {
  DualCheck c;
  c.Omega = Omega;
  const HarvestScenario dual = dualize(flat, Omega);
  c.flat = flat_report;
  c.frw = harvest(dual, threads, "dual");
  const MatrixElements& x = c.flat.elements;
  const MatrixElements& y = c.frw.elements;
  c.resid_L_AA = relative_residual(x.L_AA.value, y.L_AA.value);
  c.resid_L_BB = relative_residual(x.L_BB.value, y.L_BB.value);
  c.resid_L_AB = relative_residual(x.L_AB.value, y.L_AB.value);
  c.resid_M = relative_residual(x.M.value, y.M.value);
  c.resid_abs_M = relative_residual(std::abs(x.M.value), std::abs(y.M.value));
  c.resid_N_A = relative_residual(x.N_A.value, y.N_A.value);
  c.resid_N_B = relative_residual(x.N_B.value, y.N_B.value);
  c.resid_E1 = relative_residual(c.flat.E1, c.frw.E1);
  c.resid_negativity = relative_residual(c.flat.negativity, c.frw.negativity);
  c.resid_max = std::max({c.resid_L_AA, c.resid_L_BB, c.resid_L_AB, c.resid_M, c.resid_abs_M, c.resid_N_A,
                          c.resid_N_B, c.resid_E1, c.resid_negativity});
  return c;
}

}  // namespace udw
