#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gcbound {

// Exit codes: 0 success, 1 usage/config/parameter error, 2 runtime error.
int run_cli(int argc, char** argv);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcbound
