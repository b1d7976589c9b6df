#pragma once

#include <ostream>

namespace schmidt::cli {

/// Exit codes.
inline constexpr int kComputed = 0;
inline constexpr int kInputError = 1;
inline constexpr int kViolation = 2;  // refuted / detected

/// Runs one command line. The JSON report goes to `out`, the human-readable
/// summary and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schmidt::cli
