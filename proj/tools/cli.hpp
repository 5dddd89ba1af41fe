#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skolem::cli {

enum ExitCode : int { Success = 0, CheckFailed = 1, InputError = 2 };

/// Runs one `skolem-forge` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skolem::cli
