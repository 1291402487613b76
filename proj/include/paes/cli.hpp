#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paes::report {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_audit_mismatch = 2,
    exit_cross_check = 3,
};

// Runs the `paes` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace paes::report
