#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace holoshape::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

// Entry point behind the `holoshape` executable. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holoshape::cli
