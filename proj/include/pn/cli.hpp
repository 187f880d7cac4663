#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pn::cli {

/// Runs the command line given the arguments after the program name.
/// Exit codes: 0 when every required verdict passes, 1 when any check
/// fails, 2 on usage or parse errors (no report body in that case).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pn::cli
