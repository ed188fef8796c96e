#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace crawler {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

// Entry point of the crawlerlab tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crawler
