#ifndef ADVTEXT_TOOLS_CLI_H_
#define ADVTEXT_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace advtext::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;    // bad flags, unreadable or invalid inputs
inline constexpr int kRuntime = 2;  // transport failure, incomplete artifacts

// Runs one command line (arguments after the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace advtext::cli

#endif  // ADVTEXT_TOOLS_CLI_H_
