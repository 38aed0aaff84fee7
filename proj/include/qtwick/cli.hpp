#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtwick::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

/// Runs one subcommand (pairings, wick, fock, coeffs, jw, clt). `args`
/// excludes the program name. Returns 0 on success, 2 on invalid input or
/// usage errors, 1 on internal errors or a failed --check.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Merges flat key=value lines (blank lines and '#' comments ignored) under
/// the explicit arguments: a key becomes "--key=value" unless "--key" is
/// already present.
std::vector<std::string> mergeConfig(const std::vector<std::string>& args,
                                     const std::string& configText);

/// Compares a freshly produced artifact with a stored one. CSV is parsed
/// and compared cell by cell (numbers by value), JSON structurally, text
/// line by line. Returns a list of human-readable differences.
std::vector<std::string> diffArtifacts(const std::string& format,
                                       const std::string& expected,
                                       const std::string& actual);

}  // namespace qtwick::cli
