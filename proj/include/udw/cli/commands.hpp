#pragma once

#include <iosfwd>
#include <string>

namespace udw::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kConfigError = 2, kNumericalError = 3 };

struct CommandOptions {
  std::string config;  ///< empty: built-in defaults
  std::string out;     ///< empty: output.path from the config, else stdout
  int threads = 1;
  bool corrupt_sign = false;  ///< check-takagi negative control
};

int cmd_check_takagi(const CommandOptions& opt, std::ostream& log);
int cmd_harvest(const CommandOptions& opt, std::ostream& log);
int cmd_dualize(const CommandOptions& opt, std::ostream& log);
int cmd_geometry_tables(const CommandOptions& opt, std::ostream& log);

/// Runs `body`, mapping exceptions to exit codes and printing them to `log`.
int guarded(std::ostream& log, int (*body)(const CommandOptions&, std::ostream&), const CommandOptions& opt);

}  // namespace udw::cli
