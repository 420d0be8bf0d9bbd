#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gqe::cli {

/// Exit codes of `gqe`.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). The JSON report
/// goes to --output if given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace gqe::cli
