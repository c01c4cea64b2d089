#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace theta_idents::cli {

// Exit codes: 0 all verified instances pass, 1 at least one failure,
// 2 usage, configuration or catalog error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace theta_idents::cli
