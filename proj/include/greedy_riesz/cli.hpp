#pragma once

// Command-line front end. run() never calls exit(); it returns the status.

#include <iosfwd>
#include <string>
#include <vector>

namespace greedy_riesz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

/// args excludes the program name. CSV goes to --out or to `out`; messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace greedy_riesz::cli
