#pragma once

#include <string>
#include <vector>

namespace qcqp::cli {

/// Runs the command-line interface on the given arguments (excluding the
/// program name). Returns the process exit code: 0 success, 1 domain error
/// (machine-readable JSON on stderr), 2 usage error.
int run(const std::vector<std::string>& args);

}  // namespace qcqp::cli
