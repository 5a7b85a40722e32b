#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace txdiag::cli {

// Exit codes: 0 success, 1 domain verdict or error (invalid model, deficient
// tests, failed rules), 2 usage or I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Runs the txdiag command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace txdiag::cli
