#pragma once

#include <string>
#include <vector>

namespace sievelab::cli {

/// Runs the command line given the argument list (without the program name).
/// Returns the process exit code: 0 success, 1 domain error, 2 config error.
int run(const std::vector<std::string>& args);

} // namespace sievelab::cli
