#ifndef BK_TOOLS_CLI_HPP
#define BK_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace bk::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitError = 2;

/// Runs one `bk` command. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`. Returns 0 when the checked property holds
/// (or the evaluated formula is true), 1 when it fails, 2 on usage, parse,
/// validation or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool color = false);

}  // namespace bk::cli

#endif  // BK_TOOLS_CLI_HPP
