#pragma once

#include <iosfwd>

namespace ccpp_tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `ccpp` subcommand. Tables go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ccpp_tools
