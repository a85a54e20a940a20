#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rdil {

// Exit codes: 0 pass, 1 mathematical condition fails, 2 input/usage error,
// 3 resource cap exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdil
