#pragma once

#include <iosfwd>

namespace gdswu::cli {

enum ExitCode : int { kExitOk = 0, kExitDataError = 1, kExitUsageError = 2 };

/// Entry point behind the `gdswu` binary. argv[0] is the program name.
/// Data goes to `out`, diagnostics to `err`; `in` backs `--input -` and the
/// default input.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace gdswu::cli
