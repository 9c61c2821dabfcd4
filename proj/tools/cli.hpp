#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace beamloop::cli {

// Runs one command. Returns 0 on success, 2 on invalid input and 1 on any
// other failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beamloop::cli
