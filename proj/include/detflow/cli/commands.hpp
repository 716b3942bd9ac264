#pragma once

#include <ostream>

namespace detflow {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitSingular = 3 };

/// Entry point of the detflow tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace detflow
