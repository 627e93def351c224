#pragma once

#include <ostream>

namespace gaugekit::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kModuleError = 3,
};

/// Parses arguments, resolves the configuration and runs the command.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gaugekit::cli
