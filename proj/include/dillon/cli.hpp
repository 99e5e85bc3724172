#pragma once

// Command-line front end: search, verify, theory, invariants, sympoly and
// repro-appendix subcommands.

#include <ostream>
#include <string>
#include <vector>

namespace dillon {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitBadField = 3,
  kExitGate = 4,
  kExitIo = 5,
  kExitBadInput = 6,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "DILLON_OUT_DIR";

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`. Files are written to a temporary name and
/// renamed only after every artifact of the run has been produced.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dillon
