#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scha::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // validation errors
inline constexpr int kExitUsage = 2;    // usage, parse or I/O errors

/// Runs one command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scha::cli
