#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clf::cli {

/// Runs the command line `args` (args[0] is the program name). Returns the process exit
/// code: 0 success, 2 input or validation error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clf::cli
