#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stella::cli {

/// Exit codes. 0/1/2 are also the classification labels of `classify`.
enum ExitCode : int {
  kSeparable = 0,
  kEntangled = 1,
  kBoundary = 2,
  kUsage = 64,     // bad flags, out-of-range alpha, invalid weights
  kSoftware = 70,  // internal consistency failure
  kIo = 74,
};

/// Runs one command line. `args` excludes the program name. Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stella::cli
