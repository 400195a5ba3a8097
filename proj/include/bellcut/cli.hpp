#pragma once

// Command-line front end. Every subcommand reads JSON (or the polyhedra text
// format) from --input or standard input and writes JSON to standard output.

#include <iosfwd>
#include <string>
#include <vector>

namespace bellcut::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kGuard = 2,
  kUsage = 3,
  kNonConvergence = 4,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bellcut::cli
