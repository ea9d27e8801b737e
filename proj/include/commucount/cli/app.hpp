#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace commucount::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitUsage = 2,
    kExitBudget = 3,
    kExitNotPrime = 4,
    kExitUnsupported = 5,
    kExitComputation = 6,
};

/// Parses `args` (without the program name), runs the command, writes
/// results to `out` and messages to `err`, and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace commucount::cli
