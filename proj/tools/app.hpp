#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfsec::cli {

/// Dispatches one command line (without the program name). Writes results
/// to `out` (or to --out paths) and one-line diagnostics to `err`.
/// Returns 0 on success, 2 on invalid input, 1 on internal errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfsec::cli
