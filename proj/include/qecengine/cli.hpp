// Command-line front end: `run` (one cycle), `sweep` (a parameter grid) and
// `validate` (the acceptance suite).

#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace qecengine {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;  // bad arguments or I/O failure
inline constexpr int validation_failed = 2;
}  // namespace exit_code

/// `args` excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qecengine
