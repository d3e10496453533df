#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "udw/cli/commands.hpp"
#include "udw/cli/config.hpp"
#include "udw/cli/report_io.hpp"

using namespace udw;
using namespace udw::cli;
namespace fs = std::filesystem;

namespace {

const std::string kSource = UDW_SOURCE_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "udw_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const char* kQubits = R"(spacetime:
  frame: minkowski
detectors:
  A:
    model: qubit
    frequency: 1.0
    coupling: 0.0
    position: [0, 0, 0]
    switching: {kind: gaussian, width: 1.0}
  B:
    model: qubit
    frequency: 1.0
    coupling: 0.0
    position: [5, 0, 0]
    switching: {kind: gaussian, width: 1.0}
)";

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = load_config(kSource + "/configs/gaussian_reference.yaml");
  CHECK(cfg.scenario.model() == DetectorModel::oscillator);
  CHECK(cfg.scenario.b.trajectory.position[0] == 5.0);
  CHECK(cfg.scenario.a.interaction_scale == std::sqrt(2.0));
  CHECK(cfg.sweep_Omegas == std::vector<double>{0.5, 2, 3});
  CHECK(cfg.check.max_residual == 1e-3);

  const RunConfig q = parse_config(kQubits);
  CHECK(q.scenario.a.coupling == 0.0);
  CHECK(q.scenario.a.switching.kind() == SwitchingFunction::Kind::gaussian);

  const HarvestScenario w = with_frequency(cfg, 3.0);
  CHECK(w.a.frequency == 3.0);
  CHECK(w.b.interaction_scale == std::sqrt(6.0));
}

TEST_CASE("config errors carry a line number") {
  const std::string bad = std::string(kQubits) + "quadrature:\n  rel_tol: 1e-6\n  bogus: 3\n";
  try {
    parse_config(bad, "bad.yaml");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.yaml:18") != std::string::npos);
    CHECK(msg.find("bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("spacetime: {frame: desitter}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("field: {epsilon_levels: two}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("spacetime: [unclosed\n"), ConfigError);

  CommandOptions opt;
  opt.config = write_config("bad.yaml", bad).string();
  std::ostringstream log;
  CHECK(guarded(log, cmd_harvest, opt) == kConfigError);
  CHECK(log.str().find(":18") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(5.0) == "5");
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(-0.0) == "-0");
  CHECK(std::stod(format_real(M_PI)) == M_PI);
  CHECK_THROWS(format_real(NAN));
  CHECK(csv_row({"a", "b"}) == "a,b\n");
}

TEST_CASE("check-takagi") {
  std::ostringstream log;
  CHECK(guarded(log, cmd_check_takagi, {}) == kSuccess);
  CHECK(log.str().find("points=450 result=PASS") != std::string::npos);

  CommandOptions bad;
  bad.corrupt_sign = true;
  std::ostringstream log2;
  CHECK(guarded(log2, cmd_check_takagi, bad) == kValidationFailure);

  CommandOptions one;
  one.config = write_config("point.yaml", "check:\n  point: {omega: 1, Omega: 2, lambda: 0.5}\n").string();
  std::ostringstream log3;
  CHECK(guarded(log3, cmd_check_takagi, one) == kSuccess);
  CHECK(lines_of(log3.str()).size() == 1);
}

TEST_CASE("harvest with zero couplings") {
  CommandOptions opt;
  opt.config = write_config("zero.yaml", kQubits).string();
  opt.out = scratch("zero.json").string();
  std::ostringstream log;
  REQUIRE(guarded(log, cmd_harvest, opt) == kSuccess);
  const Json doc = Json::parse(slurp(opt.out));
  CHECK(validate_harvest_document(doc).empty());
  const Json& r = doc["records"][0];
  for (const char* k : {"L_AA", "L_BB", "L_AB", "M"}) {
    CHECK(r["elements"][k]["re"].get<double>() == 0.0);
    CHECK(r["elements"][k]["im"].get<double>() == 0.0);
  }
  CHECK(r["negativity"].get<double>() == 0.0);
}

TEST_CASE("harvest reference matches the frozen fixture and round-trips the schema") {
  CommandOptions opt;
  opt.config = kSource + "/configs/gaussian_reference.yaml";
  opt.out = scratch("reference.json").string();
  std::ostringstream log;
  REQUIRE(guarded(log, cmd_harvest, opt) == kSuccess);
  const std::string text = slurp(opt.out);
  const Json doc = Json::parse(text);
  CHECK(validate_harvest_document(doc).empty());
  CHECK(dump_json(doc) == text);

  const Json fixture = Json::parse(slurp(kSource + "/tests/fixtures/gaussian_reference_oracle.json"));
  const Json& got = doc["records"][0];
  const Json& want = fixture["records"][0];
  auto c = [](const Json& e) { return std::complex<double>(e["re"].get<double>(), e["im"].get<double>()); };
  for (const char* k : {"L_AA", "L_BB", "L_AB", "M"}) {
    INFO(k);
    CHECK(relative_residual(c(got["elements"][k]), c(want["elements"][k])) <= 1e-6);
  }
  CHECK(relative_residual(got["E1"].get<double>(), want["E1"].get<double>()) <= 1e-6);
  CHECK(relative_residual(got["negativity"].get<double>(), want["negativity"].get<double>()) <= 1e-6);

  Json broken = doc;
  broken["spec_version"] = 2;
  broken["records"][0].erase("elements");
  CHECK(validate_harvest_document(broken).size() == 2);
}

TEST_CASE("dualize tables") {
  const std::string base = slurp(kSource + "/configs/gaussian_reference.yaml");
  const std::string header =
      "omega,Omega,L_AA_flat,L_AA_frw,L_BB_flat,L_BB_frw,re_M_flat,im_M_flat,re_M_frw,im_M_frw,resid_max,neg_flat,"
      "neg_frw";
  auto with_omegas = [&](const std::string& list) {
    const auto pos = base.find("  Omegas: [0.5, 2, 3]");
    std::string t = base;
    t.replace(pos, std::string("  Omegas: [0.5, 2, 3]").size(), "  Omegas: " + list);
    return t;
  };

  CommandOptions empty;
  empty.config = write_config("empty.yaml", with_omegas("[]")).string();
  empty.out = scratch("empty.csv").string();
  std::ostringstream log;
  CHECK(guarded(log, cmd_dualize, empty) == kSuccess);
  CHECK(slurp(empty.out) == header + "\n");

  CommandOptions same;
  same.config = write_config("same.yaml", with_omegas("[1]")).string();
  same.out = scratch("same.csv").string();
  CHECK(guarded(log, cmd_dualize, same) == kSuccess);
  const auto rows = lines_of(slurp(same.out));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == header);
  std::vector<std::string> cells;
  std::stringstream ss(rows[1]);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  REQUIRE(cells.size() == 13);
  CHECK(std::stod(cells[10]) <= 1e-12);

  CommandOptions wide;
  wide.config = write_config("wide.yaml", with_omegas("[0]")).string();
  CHECK(guarded(log, cmd_dualize, wide) == kConfigError);
}

TEST_CASE("geometry tables") {
  CommandOptions opt;
  opt.config = kSource + "/configs/geometry_tables.yaml";
  opt.out = scratch("geometry.csv").string();
  std::ostringstream log;
  REQUIRE(guarded(log, cmd_geometry_tables, opt) == kSuccess);
  const auto rows = lines_of(slurp(opt.out));
  CHECK(rows[0] == "quantity,omega,Omega,x,value");
  int scale_rows = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> c;
    std::stringstream ss(rows[i]);
    for (std::string cell; std::getline(ss, cell, ',');) c.push_back(cell);
    REQUIRE(c.size() == 5);
    if (c[0] != "proper_distance") continue;
    ++scale_rows;
    const double W = std::stod(c[2]), v = std::stod(c[4]);
    const double lo = std::min(1.0, 1.0 / (W * W)), hi = std::max(1.0, 1.0 / (W * W));
    CHECK(v >= lo - 1e-15);
    CHECK(v <= hi + 1e-15);
    if (W == 1.0) CHECK(v == 1.0);
  }
  CHECK(scale_rows == 3 * 501);

  CommandOptions pl;
  pl.config = kSource + "/configs/power_law.yaml";
  pl.out = scratch("power_law.csv").string();
  REQUIRE(guarded(log, cmd_geometry_tables, pl) == kSuccess);
  double prev_t = -1, prev_v = 0;
  for (const auto& row : lines_of(slurp(pl.out))) {
    if (row.rfind("scale_factor,", 0) != 0) continue;
    std::vector<std::string> c;
    std::stringstream ss(row);
    for (std::string cell; std::getline(ss, cell, ',');) c.push_back(cell);
    const double T = std::stod(c[3]), v = std::stod(c[4]);
    CHECK(v == doctest::Approx(1 + T * T).epsilon(1e-14));
    if (T > 0 && prev_t >= 0) CHECK(v > prev_v);
    prev_t = T;
    prev_v = v;
  }
}

TEST_CASE("threads option must be positive") {
  CommandOptions opt;
  opt.threads = 0;
  std::ostringstream log;
  CHECK(guarded(log, cmd_geometry_tables, opt) == kConfigError);
}
