#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mordrive::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,    // unparsable input or failed validation
    kExitNumeric = 3,  // well-formed request the numerics cannot satisfy
};

// Entry point behind the `mordrive` binary. Never throws; every failure maps
// to an exit code with a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mordrive::cli
