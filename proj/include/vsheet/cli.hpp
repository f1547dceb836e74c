#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vsheet {

// Exit codes of the vsheet tool.
enum ExitCode : int { kExitOk = 0, kExitInvariant = 1, kExitBadInput = 2, kExitIo = 3 };

// "a:b:step" (inclusive, values a + k·step) or a comma list. Throws
// std::invalid_argument on malformed or empty grids.
std::vector<double> parse_grid(const std::string& text);

// Entry point behind tools/vsheet; reports go to out (or --out), diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vsheet
