#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isoconic::cli {

/// Runs the command line `args` (without the program name). Errors are
/// printed to `err` as one line "error[<kind>]: <message>"; the return value
/// is the process exit status (0 ok, 1 domain error, 2 usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isoconic::cli
