#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace madelung::cli {

// Exit codes: 0 success, 1 numerical failure or failed verification, 2 usage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

// Runs one invocation. args excludes the program name. Results go to out
// unless --output names a file; usage errors go to err.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace madelung::cli
