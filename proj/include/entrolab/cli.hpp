#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entrolab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args excludes the program name). Returns 0 on
// success, 1 when a checked claim fails, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entrolab
