#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmrank::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_parse = 2,
    exit_mismatch = 3,
    exit_precondition = 4,
    exit_internal = 5,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pmrank::cli
