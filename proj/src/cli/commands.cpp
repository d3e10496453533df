#include "udw/cli/commands.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "udw/cli/config.hpp"
#include "udw/cli/report_io.hpp"

namespace udw::cli {

namespace {

RunConfig config_for(const CommandOptions& opt) {
  return opt.config.empty() ? RunConfig{} : load_config(opt.config);
}

std::string out_path(const CommandOptions& opt, const RunConfig& cfg) {
  return opt.out.empty() ? cfg.output_path : opt.out;
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return x;
}

}  // namespace

int cmd_check_takagi(const CommandOptions& opt, std::ostream& log) {
  const RunConfig cfg = config_for(opt);
  const CheckConfig& c = cfg.check;
  const ShearSign sign = opt.corrupt_sign ? ShearSign::flipped : ShearSign::standard;

  if (c.point) {
    const auto [w, W, l] = *c.point;
    if (!(std::abs(w * l) < 0.5 * std::numbers::pi)) throw ConfigError("check.point: lambda must satisfy |omega lambda| < pi/2");
    const double fp = takagi_free_particle_residual(w, l, sign);
    const double cross = takagi_cross_identity_residual(w, W, l, sign);
    const double heis = heisenberg_q_relation_residual(w, W, l);
    const bool ok = fp <= c.tolerance && cross <= c.tolerance && heis <= c.tolerance;
    fmt::print(log, "omega={} Omega={} lambda={} free_particle={:.3e} cross_identity={:.3e} heisenberg={:.3e} {}\n",
               w, W, l, fp, cross, heis, ok ? "PASS" : "FAIL");
    return ok ? kSuccess : kValidationFailure;
  }

  const TakagiSuiteResult r = run_takagi_suite(c.omegas, c.Omegas, c.lambda_points, sign);
  const bool ok = r.passed(c.tolerance, c.bogoliubov_tolerance);
  auto line = [&](const char* name, double v, double tol) {
    fmt::print(log, "{:<16} max_residual={:.3e} tol={:.0e} {}\n", name, v, tol, v <= tol ? "PASS" : "FAIL");
  };
  line("free_particle", r.free_particle, c.tolerance);
  line("cross_identity", r.cross_identity, c.tolerance);
  line("heisenberg", r.heisenberg, c.tolerance);
  line("determinant", r.determinant, c.tolerance);
  line("bogoliubov", r.bogoliubov, c.bogoliubov_tolerance);
  fmt::print(log, "points={} result={}\n", r.points, ok ? "PASS" : "FAIL");

  const std::string path = out_path(opt, cfg);
  if (!path.empty()) {
    Json doc;
    doc["spec_version"] = kSpecVersion;
    doc["command"] = "check-takagi";
    doc["points"] = r.points;
    doc["residuals"] = {{"free_particle", r.free_particle}, {"cross_identity", r.cross_identity},
                        {"heisenberg", r.heisenberg},       {"determinant", r.determinant},
                        {"bogoliubov", r.bogoliubov}};
    doc["passed"] = ok;
    write_text(path, dump_json(doc));
  }
  return ok ? kSuccess : kValidationFailure;
}

int cmd_harvest(const CommandOptions& opt, std::ostream& log) {
  const RunConfig cfg = config_for(opt);
  std::vector<HarvestScenario> scenarios;
  if (cfg.sweep_frequencies.empty()) {
    scenarios.push_back(cfg.scenario);
  } else {
    for (double w : cfg.sweep_frequencies) scenarios.push_back(with_frequency(cfg, w));
  }

  Json doc;
  doc["spec_version"] = kSpecVersion;
  doc["command"] = "harvest";
  Json records = Json::array();
  for (HarvestScenario s : scenarios) {
    std::string picture = "flat";
    if (cfg.frw_frame) {
      s = dualize(s, cfg.frw_Omega);
      picture = "dual";
    }
    const HarvestReport rep = harvest(s, opt.threads, picture);
    fmt::print(log, "{} omega_A={} L_AA={:.6e} |M|={:.6e} E1={:.6e} negativity={:.6e}\n", rep.frame, s.a.frequency,
               rep.elements.L_AA.value.real(), std::abs(rep.elements.M.value), rep.E1, rep.negativity);
    for (const auto& w : rep.warnings) fmt::print(log, "  warning: {}\n", w);
    records.push_back(report_to_json(rep, s));
  }
  doc["records"] = std::move(records);
  write_text(out_path(opt, cfg), dump_json(doc));
  return kSuccess;
}

int cmd_dualize(const CommandOptions& opt, std::ostream& log) {
  const RunConfig cfg = config_for(opt);
  if (cfg.frw_frame) throw ConfigError(cfg.source + ": dualize starts from the minkowski frame");
  if (cfg.scenario.model() != DetectorModel::oscillator)
    throw ConfigError(cfg.source + ": dualize needs oscillator detectors");

  std::vector<HarvestScenario> flats;
  if (cfg.sweep_frequencies.empty()) {
    flats.push_back(cfg.scenario);
  } else {
    for (double w : cfg.sweep_frequencies) flats.push_back(with_frequency(cfg, w));
  }
  // Surface support problems before any quadrature runs.
  for (const auto& f : flats)
    for (double W : cfg.sweep_Omegas) dualize(f, W);

  std::string csv = csv_row({"omega", "Omega", "L_AA_flat", "L_AA_frw", "L_BB_flat", "L_BB_frw", "re_M_flat",
                             "im_M_flat", "re_M_frw", "im_M_frw", "resid_max", "neg_flat", "neg_frw"});
  bool ok = true;
  for (const auto& flat : flats) {
    if (cfg.sweep_Omegas.empty()) break;
    const HarvestReport flat_report = harvest(flat, opt.threads, "flat");
    for (double W : cfg.sweep_Omegas) {
      const DualCheck d = run_dual_check(flat, flat_report, W, opt.threads);
      const auto& x = d.flat.elements;
      const auto& y = d.frw.elements;
      csv += csv_row({format_real(flat.a.frequency), format_real(W), format_real(x.L_AA.value.real()),
                      format_real(y.L_AA.value.real()), format_real(x.L_BB.value.real()),
                      format_real(y.L_BB.value.real()), format_real(x.M.value.real()), format_real(x.M.value.imag()),
                      format_real(y.M.value.real()), format_real(y.M.value.imag()), format_real(d.resid_max),
                      format_real(d.flat.negativity), format_real(d.frw.negativity)});
      const bool row_ok = !cfg.check.max_residual || d.resid_max <= *cfg.check.max_residual;
      ok = ok && row_ok;
      fmt::print(log, "omega={} Omega={} resid_max={:.3e}{}\n", flat.a.frequency, W, d.resid_max,
                 row_ok ? "" : " FAIL");
    }
  }
  write_text(out_path(opt, cfg), csv);
  return ok ? kSuccess : kValidationFailure;
}

int cmd_geometry_tables(const CommandOptions& opt, std::ostream& log) {
  const RunConfig cfg = config_for(opt);
  const GeometryConfig& g = cfg.geometry;
  const auto T = grid(g.T_min, g.T_max, g.points);
  const auto lam = grid(g.lambda_min.value_or(g.T_min), g.lambda_max.value_or(g.T_max), g.points);

  std::string csv = csv_row({"quantity", "omega", "Omega", "x", "value"});
  auto row = [&](const char* q, double W, double x, double v) {
    csv += csv_row({q, format_real(g.omega), format_real(W), format_real(x), format_real(v)});
  };
  for (double W : g.Omegas) {
    const ConformalTakagiMap map(g.omega, W);
    for (double t : T) row("scale_factor", W, t, scale_factor(map, t));
    for (double t : T) row("proper_distance", W, t, proper_distance(map, g.separation, t));
    for (double l : lam) {
      if (map.power_law() && !(std::abs(l) < map.power_law_half_width())) continue;
      row("tau", W, l, tau_of_lambda(map, l));
    }
    try {
      const SwitchingFunction chi = transform_switching(map, g.switching);
      for (double t : T) row("switching", W, t, chi(t));
    } catch (const std::domain_error& e) {
      fmt::print(log, "Omega={}: switching table skipped ({})\n", W, e.what());
    }
  }
  write_text(out_path(opt, cfg), csv);
  return kSuccess;
}

int guarded(std::ostream& log, int (*body)(const CommandOptions&, std::ostream&), const CommandOptions& opt) {
  try {
    if (opt.threads < 1) throw ConfigError("--threads must be >= 1");
    return body(opt, log);
  } catch (const ConfigError& e) {
    fmt::print(log, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    fmt::print(log, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::domain_error& e) {
    fmt::print(log, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const NumericalError& e) {
    fmt::print(log, "numerical error: {}\n", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    fmt::print(log, "numerical error: {}\n", e.what());
    return kNumericalError;
  }
}

}  // namespace udw::cli
