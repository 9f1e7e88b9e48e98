#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropcram::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kParse = 2 };

// args excludes the program name. JSON verdicts and error objects go to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropcram::cli
