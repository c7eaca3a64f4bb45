#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acvass::cli {

enum ExitCode { Yes = 0, No = 1, Undecidable = 2, Unknown = 3, Usage = 4, Internal = 5 };

// args[0] is the program name. Everything the command prints goes to out/err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acvass::cli
