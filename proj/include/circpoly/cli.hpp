#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circpoly {

// Exit codes of every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitGeometricFailure = 1;
inline constexpr int kExitInputError = 2;

// Command-line entry point; args excludes the program name.  Reports go to
// `out` unless --out names a file, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circpoly
