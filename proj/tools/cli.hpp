#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmmcop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMathDomain = 1;
inline constexpr int kExitInputFormat = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command. args[0] is the program name. Output goes to out,
/// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmmcop::cli
