#pragma once

#include <iosfwd>

namespace photogest::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kEmpty = 3 };

/// Runs the command line tool; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace photogest::cli
