#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsym::cli {

/// Runs the CLI in-process: args exclude the program name. Reports go to
/// out, diagnostics to err. Returns the process exit code (0 ok, 1 parse
/// error, 2 resource limit, 3 internal error).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace bsym::cli
