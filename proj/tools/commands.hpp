#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orb::cli {

// Exit codes: 0 success, 2 parse/input, 3 validation, 4 numerical check
// failure, 5 capability bound.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitCapability = 5;

/// Runs the CLI on the given argument list (without the program name).
/// Reports go to `out` as JSON, human-readable notes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orb::cli
