#ifndef FRACGROUND_COMMANDS_HPP
#define FRACGROUND_COMMANDS_HPP

#include <ostream>
#include <string>

#include "fracground/config.hpp"

namespace fracground {

/** Exit-code contract shared by every command:
 * 0 = pass, 1 = usage/IO error, 2 = non-convergence, 3 = verification failure.
 */
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitVerifyFailed = 3;

int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const std::string& snapshot_path, std::ostream& log);
int cmd_bubble_scan(const RunConfig& cfg, std::ostream& log);
int cmd_path(const RunConfig& cfg, const std::string& snapshot_path, std::ostream& log);
int cmd_selftest(std::ostream& log);

} // namespace fracground

#endif
