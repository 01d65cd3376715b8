#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace psiscore::cli {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kUsage = 2,
    kIoError = 3,
    kNotConverged = 4,
    kBadInput = 5,
};

/// Runs one command. `args` excludes the program name. Results go to `out`
/// unless --output is given; diagnostics and run summaries go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace psiscore::cli
