#pragma once

#include <string>
#include <vector>

namespace fzdr::cli {

/// Exit codes. Errors print one stderr line: `error: <kind>: <message>`.
inline constexpr int exit_ok = 0;
inline constexpr int exit_path = 2;
inline constexpr int exit_parse = 3;
inline constexpr int exit_validation = 4;
inline constexpr int exit_internal = 1;

/// `args[0]` is the program name.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace fzdr::cli
