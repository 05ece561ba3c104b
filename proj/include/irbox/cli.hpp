#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "irbox/error.hpp"

namespace irbox::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kValidationError = 3,
  kInternalLimit = 4,
};

ExitCode exit_code_for(ErrorCode code);

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// the files named by flags, or to `out` when none is given; diagnostics go
/// to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace irbox::cli
