#pragma once

// Command-line front end. Exit codes:
//   0 success
//   1 parse or usage error
//   2 invalid target or parameters (SmallnessError, OverlapError, IndependenceError)
//   3 NotFound (search bound exhausted)
//   4 SeparationError
//   5 certificate failed verification

#include <iosfwd>
#include <string>
#include <vector>

namespace fullgroup {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitPrecondition = 2,
  kExitNotFound = 3,
  kExitSeparation = 4,
  kExitVerifyFailed = 5,
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fullgroup
