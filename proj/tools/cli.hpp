#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace divkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the divkit command line. `args` excludes the program name. JSON goes
/// to `out` (or --output); diagnostics and --pretty tables go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divkit::cli
