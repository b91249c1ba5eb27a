#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace margulis {

/// Runs the `margulis` command line with `args` (program name excluded).
/// Exit codes: 0 success, 1 I/O, 2 schema/validation, 3 numerical degeneracy.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace margulis
