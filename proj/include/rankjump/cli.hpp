#ifndef RANKJUMP_CLI_HPP
#define RANKJUMP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rankjump {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitExhausted = 3;

/// Entry point of the command-line tool; args excludes the program name.
/// Data goes to `out` or to --out files, diagnostics and timing to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rankjump

#endif  // RANKJUMP_CLI_HPP
