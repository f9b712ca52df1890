#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclespan {

// Exit codes: 0 success or verdict true, 1 verdict false or failure,
// 2 usage, config, parse or I/O error. Errors print one line
// "error: <kind>: <message>" on err.
enum ExitCode : int { kExitOk = 0, kExitFalse = 1, kExitUsage = 2 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclespan
