#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tetris {

// Runs one subcommand. Returns 0 on success or pass, 1 on a "no" or fail
// result, 2 on a usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tetris
