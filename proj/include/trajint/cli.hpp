#pragma once

#include <iosfwd>

namespace trajint {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `trajint` binary. Returns 0 on success, 1 when a
/// checked property fails, 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trajint
