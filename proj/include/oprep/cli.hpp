#pragma once

#include <string>
#include <vector>

namespace oprep::cli {

inline constexpr const char* kToolName = "oprep";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kArgumentError = 2,
  kStateError = 3,
  kNumericError = 4,
};

struct CommandOutput {
  int exit_code = kOk;
  std::string out;  // report (stdout)
  std::string err;  // diagnostics and warnings (stderr)
};

/// Runs one invocation. `args` excludes the program name.
CommandOutput run(const std::vector<std::string>& args);

}  // namespace oprep::cli
