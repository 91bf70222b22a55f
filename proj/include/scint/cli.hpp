#pragma once

// Command-line front end. The binary's main() is a thin wrapper around
// run() so tests can drive the full CLI in-process.

#include <iosfwd>

namespace scint::cli {

// Exit codes are a stable contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Parse argv and execute one subcommand (predict, sweep, season, dataset),
// writing the document to `out` and diagnostics/warnings to `err`.
// Returns one of the kExit* codes; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace scint::cli
