#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fading_cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the composite-fading tool. `args` excludes the program name.
/// Subcommands: pdf, sweep, validate, sample, selfcheck.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace fading_cli
