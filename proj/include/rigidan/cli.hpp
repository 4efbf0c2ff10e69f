#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rigidan {

// Exit codes.
enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kDomain = 3, kMismatch = 4 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rigidan
