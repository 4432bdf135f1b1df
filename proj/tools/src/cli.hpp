#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elliptica::cli {

// Runs one command line (without the program name). Reports go to out,
// diagnostics and error objects to err. Returns the process exit status:
// 0 on success, 1 on a domain error, 2 on a usage error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace elliptica::cli
