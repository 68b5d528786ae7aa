#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcycle::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

// Runs one command line (without the program name). Human output goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcycle::cli
