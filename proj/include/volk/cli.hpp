#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace volk {

// exit codes: 0 all checks passed, 1 a verification failed, 2 bad usage/config
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace volk
