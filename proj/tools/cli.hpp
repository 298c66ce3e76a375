#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heatwf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitAccuracy = 3;

/// Runs the command line `args` (without the program name).
/// Results go to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heatwf::cli
