#pragma once

#include <ostream>

#include "regiospec/error.hpp"

namespace regiospec {

/// Exit status for a library error: 2 for invalid input, 3 for numeric failure.
int exit_code(ErrorCode c);

/// Runs the command line; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace regiospec
