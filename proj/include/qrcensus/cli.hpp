#pragma once

#include <iosfwd>
#include <stop_token>
#include <string>
#include <vector>

namespace qrc::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kCounterexample = 3,
    kLawViolation = 4,
};

/// Runs one invocation. args excludes the program name. Data goes to out,
/// diagnostics and timing to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::stop_token stop = {});

}  // namespace qrc::cli
