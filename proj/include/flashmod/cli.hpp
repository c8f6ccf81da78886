#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flashmod {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `flashmod` tool. args[0] is the program name.
// Subcommands: simulate, ballsbins, bounds, roundtrip.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flashmod
