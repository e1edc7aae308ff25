#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vandermetric {

/// Runs one CLI invocation. `args` excludes the program name.
/// Returns 0 when every check passes, 1 when a check fails, 2 on usage or
/// input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vandermetric
