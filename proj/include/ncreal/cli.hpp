#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncreal {

// args excludes the program name. Exit codes: 0 ok, 2 input error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncreal
