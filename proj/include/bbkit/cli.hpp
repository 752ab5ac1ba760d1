// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>

namespace bbkit::cli {

/// Runs one CLI invocation. `args` excludes the program name. Reads CSV input
/// from `in` when a command asks for stdin ("-"), writes the payload to `out`
/// (or to --output), and one-line diagnostics to `err`.
///
/// Exit codes: 0 success; 2 domain or resource error; 64 unknown command or
/// bad usage; 65 malformed CSV input (diagnostic names the offending line).
int run(std::span<const char* const> args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace bbkit::cli
