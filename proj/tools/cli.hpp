#pragma once

#include <iosfwd>

namespace bratteli::cli {

// Full command-line front end, callable in-process: returns the exit code
// (0 success, 1 bad input, 2 mathematically impossible, 3 budget) and
// writes results to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bratteli::cli
