#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qelect {

// Parses and runs one experiment invocation (args exclude the program
// name), writing the report to out and diagnostics to err. Returns 0 on
// success, 1 on usage or validation errors, 2 when --assert is set and a
// statistical test rejected.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qelect
