#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hdatool {

/// Runs one command line (without the program name). Writes a single record to
/// `out` and diagnostics to `err`. Returns 0 for true/success, 1 for false, 2 for
/// input and usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hdatool
