#ifndef RMNCS_TOOLS_CLI_HPP_
#define RMNCS_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace rmncs::cli {

enum ExitCode : int {
    kOk = 0,
    kUsageError = 1,
    kDataError = 2,
    kNotConverged = 3,
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one command. `args` excludes the program name. Reports go to files;
/// diagnostics go to `err` prefixed with "error:".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Sets the global log level from RMNCS_LOG (error|warn|info|debug) and
/// routes log output to stderr.
void configure_logging();

} // namespace rmncs::cli

#endif // RMNCS_TOOLS_CLI_HPP_
