#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lcong/error.hpp"

/// The `lcong` command-line front end, callable in-process.
namespace lcong::cli {

enum ExitCode : int {
    kPass = 0,
    kViolation = 1,
    kInputError = 2,
    kPrecisionFailure = 3,
};

int exit_code_for(ErrorKind kind);

/// args excludes the program name. The report goes to out (also on errors);
/// diagnostics go to err. in backs `--input -`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace lcong::cli
