#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace extsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitIo = 4;

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code. Errors are reported on `err`, never thrown.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Inclusive integer ranges: "4", "2..6", "2,3,5" or a mix such as "2..4,7".
std::vector<int> parse_int_range(const std::string& text);

}  // namespace extsum::cli
