#pragma once

// Command-line front end: classify, morita, verify, quadforms, orbits-dump.
// Exit codes: 0 success, 1 check failure, 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

namespace pcube::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pcube::cli
