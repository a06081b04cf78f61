#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nonsmooth::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
    kOk = 0,         // success, or a certificate was found / accepted
    kNegative = 1,   // nothing found, or a certificate was rejected
    kMalformed = 2,  // bad arguments or unreadable input
};

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The reproduction report; returns the number of failing blocks.
int reproduce_report(std::ostream& out, bool timing);

}  // namespace nonsmooth::cli
