#pragma once

// Command-line front end.
//
//   chernforge chern  --config PATH [--format text|json|csv] [--out PATH]
//   chernforge odd    --config PATH [--format ...] [--out PATH]
//   chernforge verify --suite NAME [--seed N] [--cases N] [--degree N] [--config PATH] ...
//
// Exit codes: 0 success, 1 suite failure, 2 usage or parse error, 3 precondition
// violation. Settings resolve flag > config file > CHERNFORGE_DEGREE (degree only)
// > built-in default (seed 42, cases 100, degree 8, format text).

#include <iosfwd>
#include <string>
#include <vector>

namespace chernforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chernforge
