#include <iostream>

#include "CLI11.hpp"
#include "udw/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace udw::cli;
  CLI::App app{"Conformal-Takagi duality for Unruh-DeWitt detectors"};
  app.require_subcommand(1);

  CommandOptions opt;
  int seed = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "YAML scenario file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output file (default: output.path, else stdout)");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "reserved; the computation uses no randomness");
  };

  auto* check = app.add_subcommand("check-takagi", "symplectic and Bogoliubov identity suite");
  common(check);
  check->add_flag("--corrupt-sign", opt.corrupt_sign, "flip the shear sign (negative control)")->group("");
  auto* harvest = app.add_subcommand("harvest", "matrix elements, density matrix and negativity");
  common(harvest);
  auto* dualize = app.add_subcommand("dualize", "flat vs dual-FRW comparison table");
  common(dualize);
  auto* geometry = app.add_subcommand("geometry-tables", "scale factor, proper distance, tau and switching tables");
  common(geometry);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }

  if (*check) return guarded(std::cout, cmd_check_takagi, opt);
  if (*harvest) return guarded(std::cerr, cmd_harvest, opt);
  if (*dualize) return guarded(std::cerr, cmd_dualize, opt);
  return guarded(std::cerr, cmd_geometry_tables, opt);
}
