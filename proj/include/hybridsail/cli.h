// Command-line front end: simulate, sweep, fit, forcemap, dump-config.

#ifndef HYBRIDSAIL_CLI_H_
#define HYBRIDSAIL_CLI_H_

#include <iosfwd>

namespace hybridsail {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitTimeout = 2;

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace hybridsail

#endif  // HYBRIDSAIL_CLI_H_
