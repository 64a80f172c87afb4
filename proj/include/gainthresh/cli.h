#ifndef GAINTHRESH_CLI_H
#define GAINTHRESH_CLI_H

#include <ostream>

namespace gainthresh {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitUsage = 64;

/// Entry point of the `gainthresh` tool. Reports go to `out` (or the file
/// named by -o); diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gainthresh

#endif  // GAINTHRESH_CLI_H
