#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padesr {

/// Runs the command line (args excludes the program name). Returns the exit code:
/// 0 on success, 2 on usage or parse errors, 1 on other failures.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace padesr
