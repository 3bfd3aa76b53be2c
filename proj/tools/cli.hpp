#pragma once

#include <iosfwd>

namespace nasearch::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kBadArguments = 2,
    kIntegrationFailed = 3,
    kAccuracyFailed = 4,
};

// Entry point of the nasearch tool. Regular output goes to `out`,
// diagnostics to `err`; a trajectory written to "-" goes to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nasearch::cli
