#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acp {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitNotTriggered = 1,
    kExitUsage = 2,
    kExitAnalysisError = 3,
};

/**
 * Runs one `acp` invocation. `args` excludes the program name.
 *
 * Subcommands: analyze, check, simulate, extract, thresholds.
 */
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace acp
