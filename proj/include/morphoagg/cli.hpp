#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace morphoagg {

// Exit status: 0 success, 1 input error, 2 infeasible instance.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace morphoagg
