#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilkit {

// dispatch a command line (without the program name); returns the exit code:
// 0 success/verified, 1 verification failure, 2 usage error
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilkit
