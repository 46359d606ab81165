#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace peirce::cli {

inline constexpr const char* kToolName = "peirce_tool";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

enum ExitCode : int { kOk = 0, kIo = 1, kPrecondition = 2, kMathFailure = 3, kInternalAlarm = 4 };

// Runs one command line (without the program name) and returns the exit
// code. Reports and data go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peirce::cli
