#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace c1homeo {

// Runs the command-line tool in-process. `args` excludes the program name.
// Exit codes: 0 verdict PASS, 2 FAIL, 3 INCONCLUSIVE, 1 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Convenience overload writing to std::cout / std::cerr.
int run_cli(const std::vector<std::string>& args);

}  // namespace c1homeo
