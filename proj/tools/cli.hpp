#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treemult::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Returns the exit status:
/// 0 on success, 1 when violations are found, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace treemult::cli
