#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarsekit {

// Runs one command line (without the program name). Returns 0 on success,
// 1 on a negative verdict, 2 on usage or format errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarsekit
