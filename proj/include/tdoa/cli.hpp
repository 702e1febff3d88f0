#pragma once

#include <iosfwd>

namespace tdoa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitValidationFailed = 2;

/// Command-line entry point. Results go to `out` (or the --out file),
/// diagnostics and usage to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdoa::cli
