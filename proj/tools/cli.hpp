#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace k3fib {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Runs `k3fib <args...>` writing to out/err; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k3fib
