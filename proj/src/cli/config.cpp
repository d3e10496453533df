#include "udw/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace udw::cli {

namespace {

class Reader {
 public:
  Reader(YAML::Node node, std::string where, const std::string* source)
      : node_(std::move(node)), where_(std::move(where)), source_(source) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
    const int line = at.Mark().line >= 0 ? at.Mark().line + 1 : 0;
    throw ConfigError(fmt::format("{}:{}: {}: {}", *source_, line, where_, msg));
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(node_, msg); }

  void allow(std::initializer_list<const char*> keys) const {
    if (!node_.IsMap()) fail("expected a mapping");
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!ok.count(key)) fail(kv.first, fmt::format("unknown key '{}'", key));
    }
  }

  bool has(const char* key) const { return static_cast<bool>(node_[key]); }

  Reader child(const char* key) const {
    const YAML::Node n = node_[key];
    if (!n) fail(fmt::format("missing section '{}'", key));
    return Reader(n, where_.empty() ? key : where_ + "." + key, source_);
  }

  double real(const char* key) const {
    const YAML::Node n = node_[key];
    if (!n) fail(fmt::format("missing key '{}'", key));
    return as_real(n, key);
  }
  double real(const char* key, double fallback) const { return has(key) ? real(key) : fallback; }

  double positive(const char* key, double fallback) const {
    const double v = real(key, fallback);
    if (!(v > 0.0)) fail(node_[key], fmt::format("'{}' must be > 0", key));
    return v;
  }

  int integer(const char* key, int fallback) const {
    const YAML::Node n = node_[key];
    if (!n) return fallback;
    try {
      return n.as<int>();
    } catch (const YAML::Exception&) {
      fail(n, fmt::format("'{}' must be an integer", key));
    }
  }

  std::string text(const char* key, const std::string& fallback) const {
    const YAML::Node n = node_[key];
    if (!n) return fallback;
    if (!n.IsScalar()) fail(n, fmt::format("'{}' must be a string", key));
    return n.as<std::string>();
  }

  std::vector<double> reals(const char* key, std::vector<double> fallback) const {
    const YAML::Node n = node_[key];
    if (!n) return fallback;
    if (!n.IsSequence()) fail(n, fmt::format("'{}' must be a list of numbers", key));
    std::vector<double> out;
    for (const auto& item : n) out.push_back(as_real(item, key));
    return out;
  }

  const YAML::Node& node() const { return node_; }

 private:
  double as_real(const YAML::Node& n, const char* key) const {
    if (!n.IsScalar()) fail(n, fmt::format("'{}' must be a number", key));
    try {
      const double v = n.as<double>();
      if (!std::isfinite(v)) fail(n, fmt::format("'{}' must be finite", key));
      return v;
    } catch (const YAML::Exception&) {
      fail(n, fmt::format("'{}' must be a number", key));
    }
  }

  YAML::Node node_;
  std::string where_;
  const std::string* source_;
};

SwitchingFunction read_switching(const Reader& r) {
  const std::string kind = r.text("kind", "");
  try {
    if (kind == "gaussian") {
      r.allow({"kind", "width", "center"});
      return SwitchingFunction::gaussian(r.positive("width", 1.0), r.real("center", 0.0));
    }
    if (kind == "cos_squared") {
      r.allow({"kind", "t0", "t1"});
      return SwitchingFunction::cos_squared(r.real("t0"), r.real("t1"));
    }
    if (kind == "tabulated") {
      r.allow({"kind", "start", "step", "samples"});
      return SwitchingFunction::tabulated(r.real("start"), r.positive("step", 1.0), r.reals("samples", {}));
    }
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  r.fail(fmt::format("switching kind must be gaussian, cos_squared or tabulated (got '{}')", kind));
}

DetectorSpec read_detector(const Reader& r, char label, bool* explicit_scale) {
  r.allow({"model", "frequency", "coupling", "interaction_scale", "position", "switching"});
  const std::string model = r.text("model", "qubit");
  const double frequency = r.positive("frequency", 1.0);
  const double coupling = r.real("coupling", 0.01);
  const std::vector<double> pos = r.reals("position", {0.0, 0.0, 0.0});
  if (pos.size() != 3) r.fail(r.node()["position"], "'position' needs three coordinates");
  const Vec3 x{pos[0], pos[1], pos[2]};
  const SwitchingFunction chi = r.has("switching") ? read_switching(r.child("switching"))
                                                   : SwitchingFunction::gaussian(1.0);
  if (model != "qubit" && model != "oscillator")
    r.fail(r.node()["model"], fmt::format("model must be qubit or oscillator (got '{}')", model));
  DetectorSpec d = model == "qubit" ? DetectorSpec::qubit(label, frequency, coupling, x, chi)
                                    : DetectorSpec::oscillator(label, frequency, coupling, x, chi);
  *explicit_scale = r.has("interaction_scale");
  if (*explicit_scale) d.interaction_scale = r.real("interaction_scale");
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  return d;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  cfg.source = source;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("{}:{}: {}", source, e.mark.line + 1, e.msg));
  }
  if (root.IsNull()) return cfg;
  const Reader top(root, "", &cfg.source);
  top.allow({"spacetime", "detectors", "field", "quadrature", "output", "sweep", "geometry", "check"});

  if (top.has("spacetime")) {
    const Reader s = top.child("spacetime");
    s.allow({"frame", "Omega"});
    const std::string frame = s.text("frame", "minkowski");
    if (frame == "frw") {
      cfg.frw_frame = true;
      cfg.frw_Omega = s.real("Omega");
      if (!(cfg.frw_Omega >= 0.0)) s.fail(s.node()["Omega"], "'Omega' must be >= 0");
    } else if (frame != "minkowski") {
      s.fail(s.node()["frame"], fmt::format("frame must be minkowski or frw (got '{}')", frame));
    } else if (s.has("Omega")) {
      s.fail(s.node()["Omega"], "'Omega' only applies to the frw frame");
    }
  }

  if (top.has("detectors")) {
    const Reader d = top.child("detectors");
    d.allow({"A", "B"});
    if (d.has("A")) cfg.scenario.a = read_detector(d.child("A"), 'A', &cfg.explicit_scale_a);
    if (d.has("B")) cfg.scenario.b = read_detector(d.child("B"), 'B', &cfg.explicit_scale_b);
    if (cfg.scenario.a.model != cfg.scenario.b.model) d.fail("detectors A and B must use the same model");
  }

  QuadratureConfig& q = cfg.scenario.quadrature;
  if (top.has("field")) {
    const Reader f = top.child("field");
    f.allow({"epsilon_scale", "epsilon_levels", "epsilon_sequence"});
    q.epsilon_scale = f.positive("epsilon_scale", q.epsilon_scale);
    q.epsilon_levels = f.integer("epsilon_levels", q.epsilon_levels);
    q.epsilon_sequence = f.reals("epsilon_sequence", {});
  }
  if (top.has("quadrature")) {
    const Reader r = top.child("quadrature");
    r.allow({"rel_tol", "abs_tol", "max_subdivisions", "extrapolation", "l_method"});
    q.rel_tol = r.positive("rel_tol", q.rel_tol);
    q.abs_tol = r.positive("abs_tol", q.abs_tol);
    q.max_subdivisions = r.integer("max_subdivisions", q.max_subdivisions);
    const std::string ex = r.text("extrapolation", "richardson");
    if (ex == "richardson") q.extrapolation = Extrapolation::richardson;
    else if (ex == "none") q.extrapolation = Extrapolation::none;
    else r.fail(r.node()["extrapolation"], "extrapolation must be none or richardson");
    const std::string lm = r.text("l_method", "direct");
    if (lm == "direct") cfg.scenario.l_method = LMethod::direct;
    else if (lm == "fourier") cfg.scenario.l_method = LMethod::fourier;
    else r.fail(r.node()["l_method"], "l_method must be direct or fourier");
  }
  try {
    q.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", source, e.what()));
  }

  if (top.has("output")) {
    const Reader o = top.child("output");
    o.allow({"path"});
    cfg.output_path = o.text("path", "");
  }

  if (top.has("sweep")) {
    const Reader s = top.child("sweep");
    s.allow({"frequencies", "Omegas"});
    cfg.sweep_frequencies = s.reals("frequencies", {});
    for (double w : cfg.sweep_frequencies)
      if (!(w > 0.0)) s.fail(s.node()["frequencies"], "sweep frequencies must be > 0");
    cfg.sweep_Omegas = s.reals("Omegas", {});
    for (double w : cfg.sweep_Omegas)
      if (!(w >= 0.0)) s.fail(s.node()["Omegas"], "sweep Omegas must be >= 0");
  }

  if (top.has("geometry")) {
    const Reader g = top.child("geometry");
    g.allow({"omega", "Omegas", "T_min", "T_max", "points", "separation", "lambda_min", "lambda_max", "switching"});
    GeometryConfig& G = cfg.geometry;
    G.omega = g.positive("omega", G.omega);
    G.Omegas = g.reals("Omegas", G.Omegas);
    for (double w : G.Omegas)
      if (!(w >= 0.0)) g.fail(g.node()["Omegas"], "Omegas must be >= 0");
    G.T_min = g.real("T_min", G.T_min);
    G.T_max = g.real("T_max", G.T_max);
    if (!(G.T_max > G.T_min)) g.fail("T_max must exceed T_min");
    G.points = g.integer("points", G.points);
    if (G.points < 2) g.fail(g.node()["points"], "'points' must be >= 2");
    G.separation = g.real("separation", G.separation);
    if (!(G.separation >= 0.0)) g.fail(g.node()["separation"], "'separation' must be >= 0");
    if (g.has("lambda_min")) G.lambda_min = g.real("lambda_min");
    if (g.has("lambda_max")) G.lambda_max = g.real("lambda_max");
    if (g.has("switching")) G.switching = read_switching(g.child("switching"));
  }

  if (top.has("check")) {
    const Reader c = top.child("check");
    c.allow({"omegas", "Omegas", "lambda_points", "tolerance", "bogoliubov_tolerance", "point", "max_residual"});
    CheckConfig& C = cfg.check;
    C.omegas = c.reals("omegas", C.omegas);
    C.Omegas = c.reals("Omegas", C.Omegas);
    for (double w : C.omegas)
      if (!(w > 0.0)) c.fail(c.node()["omegas"], "omegas must be > 0");
    for (double w : C.Omegas)
      if (!(w > 0.0)) c.fail(c.node()["Omegas"], "Omegas must be > 0");
    C.lambda_points = c.integer("lambda_points", C.lambda_points);
    if (C.lambda_points < 1) c.fail(c.node()["lambda_points"], "'lambda_points' must be >= 1");
    C.tolerance = c.positive("tolerance", C.tolerance);
    C.bogoliubov_tolerance = c.positive("bogoliubov_tolerance", C.bogoliubov_tolerance);
    if (c.has("point")) {
      const Reader p = c.child("point");
      p.allow({"omega", "Omega", "lambda"});
      C.point = CheckConfig::Point{p.positive("omega", 1.0), p.positive("Omega", 1.0), p.real("lambda")};
    }
    if (c.has("max_residual")) C.max_residual = c.positive("max_residual", 1e-3);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("{}: cannot open config file", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

HarvestScenario with_frequency(const RunConfig& cfg, double frequency) {
  HarvestScenario s = cfg.scenario;
  for (auto [d, fixed] : {std::pair{&s.a, cfg.explicit_scale_a}, std::pair{&s.b, cfg.explicit_scale_b}}) {
    d->frequency = frequency;
    if (d->model == DetectorModel::oscillator && !fixed) d->interaction_scale = std::sqrt(2.0 * frequency);
  }
  return s;
}

}  // namespace udw::cli
