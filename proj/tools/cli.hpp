#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sfk::cli
