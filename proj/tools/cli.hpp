#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isofill::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int
{
    kOk = 0,
    kUsage = 1,
    kNoFilling = 2,
    kResourceCap = 3,
};

/// Runs the tool on `args` (without the program name); reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isofill::cli
