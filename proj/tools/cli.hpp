#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wittchar::cli {

inline constexpr const char* kToolName = "wittchar";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInputError = 2,
    kBudget = 3,
    kCheckFailed = 4,
};

/// Runs one command. Results go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wittchar::cli
