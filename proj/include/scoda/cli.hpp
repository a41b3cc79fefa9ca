#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scoda::cli {

/// Entry point of the `scoda` tool. args excludes the program name.
/// Data goes to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scoda::cli
