#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace taskgrid {

/// Runs one CLI invocation. `args` excludes the program name. Writes
/// results to `out` and a single "error: <code>: <message>" line to `err`
/// on failure; the return value is the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace taskgrid
