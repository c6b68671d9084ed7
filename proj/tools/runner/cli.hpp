#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace darkchain::runner {

enum ExitCode : int { kPass = 0, kConfigError = 1, kNumericFailure = 2, kCheckFailure = 3 };

/// Full command line front end; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace darkchain::runner
