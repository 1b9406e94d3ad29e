#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace randsudoku::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,     // the input was read but failed validation
  kUsage = 2,       // bad flags or unparsable input
  kInfeasible = 3,  // infeasible order or exhausted budget
};

/// Runs one command. `args` excludes the program name. Matrices are read
/// from `in` when the command needs one; results go to `out`; the effective
/// seed and other diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace randsudoku::cli
