#ifndef PARTSRL_CLI_HPP_
#define PARTSRL_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace partsrl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. args excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int Main(int argc, char** argv);

}  // namespace partsrl::cli

#endif  // PARTSRL_CLI_HPP_
