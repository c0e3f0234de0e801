#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prodperc {

// Exit codes: 0 success, 1 a checked bound failed, 2 bad usage or invalid
// parameters, 3 capacity exceeded.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prodperc
