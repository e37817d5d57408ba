#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace majq::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_not_equivalent = 1;
inline constexpr int exit_wrong_answer = 2;
inline constexpr int exit_usage = 64;
inline constexpr int exit_precondition = 65;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace majq::cli
