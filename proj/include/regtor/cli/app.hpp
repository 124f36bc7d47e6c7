#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace regtor::cli {

/// Exit codes of the command line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool on `args` (without the program name). `out` receives help,
/// summaries and certificates written to "-"; `err` receives diagnostics.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace regtor::cli
