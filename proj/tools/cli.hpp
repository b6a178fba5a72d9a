#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pdl::cli {

// Exit codes: 0 yes / valid, 1 no / invalid, 2 errors, 3 unknown.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdl::cli
