#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mwer {

// Full command-line surface; `args` excludes the program name. Returns the
// process exit status: 0 success, 2 input/validation error, 3 an audit
// found a counterexample, 4 the requested update is undefined.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mwer
