#ifndef EXOLIM_CLI_HPP
#define EXOLIM_CLI_HPP

#include "exolim/error.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace exolim::cli {

/// Process exit codes, one per failure class.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoFailure = 2,
  kValidationFailure = 3,
  kNumericalFailure = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Runs one command. `args` excludes the program name. Results go to
/// `out` (or the --output file); errors go to `err` as a JSON document.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace exolim::cli

#endif
