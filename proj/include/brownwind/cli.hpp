#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace brownwind {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitVerifyFailed = 3 };

/// Default output directory, overridable through this environment variable.
inline constexpr const char* kOutDirEnv = "BROWNWIND_OUT";

/// Runs the tool on `args` (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brownwind
