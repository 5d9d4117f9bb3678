#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eland::cli {

/// Exit codes of the command-line tool.
enum Exit : int { ok = 0, invariant = 1, usage = 2, numeric = 3 };

/// Parses and runs one command line (args excludes the program name). JSON
/// results go to out, errors to err as {"error": {...}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eland::cli
