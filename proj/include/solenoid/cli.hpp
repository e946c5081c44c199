#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace solenoid {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit statuses: 0 certificate found or verified, 2 inconclusive, 1 usage or
// input error.  The report (JSON) goes to `out` unless --output names a file;
// diagnostics go to `err`.  `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solenoid
