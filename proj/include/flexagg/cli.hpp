#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flexagg {

// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_failed = 1,       // validate found a failing check, or an unclassified error
    exit_schema = 2,       // malformed scenario / interchange file or bad arguments
    exit_infeasible = 3,   // a device model has an empty feasible set
    exit_numerical = 4,    // LP or barrier solver failure
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace flexagg
