#pragma once

#include <ostream>

namespace mlion {

// Exit codes: 0 success, 1 computation error, 2 usage/config/input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mlion
