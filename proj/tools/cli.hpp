#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmspectra::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericalError = 3 };

// Runs one command line (args excludes the program name). Normal output goes
// to `out`, diagnostics to `err`; files go under the --out directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmspectra::cli
