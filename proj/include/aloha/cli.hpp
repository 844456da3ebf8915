#pragma once

#include <string>
#include <vector>

namespace aloha::cli {

/// Exit codes: 0 success, 2 usage or config error, 3 solver non-convergence
/// (no interior equilibrium, or iteration failure; partial diagnostics are
/// still emitted as JSON).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotConverged = 3;

int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  ///< args without argv[0]

}  // namespace aloha::cli
