#include "udw/cli/report_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <fmt/format.h>

namespace udw::cli {

namespace {

void emit(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        emit(it.value(), indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(v, indent + 2, out);
      }
      if (!flat) out += "\n" + std::string(static_cast<std::size_t>(indent), ' ');
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json matrix_part(const Eigen::MatrixXcd& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(imag ? m(i, k).imag() : m(i, k).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json switching_to_json(const SwitchingFunction& s) {
  Json j;
  j["kind"] = s.kind_name();
  if (s.kind() == SwitchingFunction::Kind::gaussian) {
    j["width"] = s.param_a();
    j["center"] = s.param_b();
  } else if (s.kind() == SwitchingFunction::Kind::cos_squared) {
    j["t0"] = s.param_a();
    j["t1"] = s.param_b();
  }
  j["support"] = {s.support().lo, s.support().hi};
  j["timescale"] = s.timescale();
  return j;
}

Json detector_to_json(const DetectorSpec& d) {
  Json j;
  j["model"] = model_name(d.model);
  j["frequency"] = d.frequency;
  j["coupling"] = d.coupling;
  j["interaction_scale"] = d.interaction_scale;
  j["position"] = {d.trajectory.position[0], d.trajectory.position[1], d.trajectory.position[2]};
  j["switching"] = switching_to_json(d.switching);
  j["initial_state"] = d.squeezed ? "takagi_squeezed" : "ground";
  if (d.squeezed && d.squeezed->bogoliubov) {
    const auto& bp = *d.squeezed->bogoliubov;
    j["bogoliubov"] = {{"alpha_re", bp.alpha.real()}, {"alpha_im", bp.alpha.imag()},
                       {"beta_re", bp.beta.real()},   {"beta_im", bp.beta.imag()}};
  }
  return j;
}

bool is_real(const Json& j) { return j.is_number(); }

}  // namespace

std::string format_real(double x) {
  if (!std::isfinite(x)) throw std::runtime_error("format_real: non-finite value");
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  return fmt::format("{:.17g}", x);
}

std::string dump_json(const Json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

Json element_to_json(const IntegralResult& r) {
  Json j;
  j["re"] = r.value.real();
  j["im"] = r.value.imag();
  j["err"] = r.err_estimate;
  j["epsilon_used"] = r.epsilon_used;
  j["extrapolated"] = r.extrapolated;
  j["converged"] = r.converged;
  return j;
}

Json report_to_json(const HarvestReport& report, const HarvestScenario& scenario) {
  Json j;
  j["frame"] = report.frame;
  j["picture"] = report.picture;
  j["model"] = model_name(report.model);
  j["l_method"] = scenario.l_method == LMethod::direct ? "direct" : "fourier";
  j["detectors"] = {{"A", detector_to_json(scenario.a)}, {"B", detector_to_json(scenario.b)}};
  j["separation"] = distance(scenario.a.trajectory.position, scenario.b.trajectory.position);
  j["epsilons"] = report.epsilons;
  Json el;
  const MatrixElements& e = report.elements;
  el["L_AA"] = element_to_json(e.L_AA);
  el["L_BB"] = element_to_json(e.L_BB);
  el["L_AB"] = element_to_json(e.L_AB);
  el["M"] = element_to_json(e.M);
  if (e.has_N) {
    el["N_A"] = element_to_json(e.N_A);
    el["N_B"] = element_to_json(e.N_B);
  }
  j["elements"] = std::move(el);
  j["E1"] = report.E1;
  j["negativity"] = report.negativity;
  j["rho"] = {{"dim", report.rho.rows()}, {"re", matrix_part(report.rho, false)}, {"im", matrix_part(report.rho, true)}};
  j["warnings"] = report.warnings;
  return j;
}

std::vector<std::string> validate_harvest_document(const Json& doc) {
  std::vector<std::string> bad;
  auto need = [&](const Json& obj, const char* key, const std::string& where) -> const Json* {
    if (!obj.is_object() || !obj.contains(key)) {
      bad.push_back(where + ": missing '" + key + "'");
      return nullptr;
    }
    return &obj.at(key);
  };
  if (!doc.is_object()) return {"document is not an object"};
  if (const Json* v = need(doc, "spec_version", "document"); v && (!v->is_number_integer() || *v != kSpecVersion))
    bad.push_back("spec_version must be 1");
  if (const Json* v = need(doc, "command", "document"); v && *v != "harvest") bad.push_back("command must be harvest");
  const Json* records = need(doc, "records", "document");
  if (!records) return bad;
  if (!records->is_array()) return {"records must be an array"};
  for (std::size_t i = 0; i < records->size(); ++i) {
    const Json& r = (*records)[i];
    const std::string where = fmt::format("records[{}]", i);
    for (const char* key : {"frame", "picture", "model", "l_method"})
      if (const Json* v = need(r, key, where); v && !v->is_string()) bad.push_back(where + "." + key + " must be a string");
    for (const char* key : {"E1", "negativity", "separation"})
      if (const Json* v = need(r, key, where); v && !is_real(*v)) bad.push_back(where + "." + key + " must be a number");
    if (const Json* v = need(r, "negativity", where); v && is_real(*v) && v->get<double>() < 0.0)
      bad.push_back(where + ".negativity must be >= 0");
    if (const Json* v = need(r, "epsilons", where); v && !v->is_array()) bad.push_back(where + ".epsilons must be an array");
    if (const Json* v = need(r, "warnings", where); v && !v->is_array()) bad.push_back(where + ".warnings must be an array");
    need(r, "detectors", where);
    const Json* model = r.contains("model") ? &r.at("model") : nullptr;
    if (const Json* el = need(r, "elements", where)) {
      std::vector<const char*> keys{"L_AA", "L_BB", "L_AB", "M"};
      if (model && *model == "oscillator") {
        keys.push_back("N_A");
        keys.push_back("N_B");
      }
      for (const char* key : keys) {
        const Json* x = need(*el, key, where + ".elements");
        if (!x) continue;
        for (const char* f : {"re", "im", "err", "epsilon_used"})
          if (const Json* v = need(*x, f, where + ".elements." + key); v && !is_real(*v))
            bad.push_back(where + ".elements." + key + "." + f + " must be a number");
        for (const char* f : {"extrapolated", "converged"})
          if (const Json* v = need(*x, f, where + ".elements." + key); v && !v->is_boolean())
            bad.push_back(where + ".elements." + key + "." + f + " must be a boolean");
      }
    }
    if (const Json* rho = need(r, "rho", where)) {
      const Json* dim = need(*rho, "dim", where + ".rho");
      const int expect = model && *model == "oscillator" ? 6 : 4;
      if (dim && (!dim->is_number_integer() || *dim != expect)) bad.push_back(where + ".rho.dim does not match the model");
      for (const char* part : {"re", "im"}) {
        const Json* m = need(*rho, part, where + ".rho");
        if (!m) continue;
        bool ok = m->is_array() && m->size() == static_cast<std::size_t>(expect);
        if (ok)
          for (const auto& row : *m) ok = ok && row.is_array() && row.size() == static_cast<std::size_t>(expect);
        if (!ok) bad.push_back(where + ".rho." + part + " has the wrong shape");
      }
    }
  }
  return bad;
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

}  // namespace udw::cli
