#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pointlab::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kDomainError = 3 };

// Full command line including the program name. Output goes to `out`
// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pointlab::cli
