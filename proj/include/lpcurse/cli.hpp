#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace lpcurse::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kResource = 3 };

/// Runs one subcommand. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace lpcurse::cli
