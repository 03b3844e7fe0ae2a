#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fint {

// Parses the argument list (without the program name), runs the requested
// subcommand, and writes the report to out. Returns the process exit code:
// 0 success, 1 for a pipeline result that fails its check, 2 for unusable
// input (bad flags, unreadable or invalid problem files).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fint
