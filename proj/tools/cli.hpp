#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace designlens::cli {

enum ExitCode : int {
    kClean = 0,
    kGateFailure = 1,
    kUsage = 2,
    kInputError = 3,
};

struct Environment {
    bool stdout_is_terminal = false;
    bool no_color = false;  // DESIGNLENS_NO_COLOR is set
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace designlens::cli
