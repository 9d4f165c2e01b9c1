#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace scalerel::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfigError = 2,
  kExitNumericalError = 3,
};

/// Runs one resolved subcommand, writing its CSV or JSON to `out`.
/// Returns kExitOk or kExitCheckFailed; library errors propagate.
int run_command(const RunConfig& cfg, std::ostream& out);

/// Full command line: parse, resolve, run, map errors to exit codes. Output
/// goes to the resolved --out file, or to `out` when there is none; messages
/// go to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scalerel::cli
