// cli.hpp
// Entry point of the lglab command-line tool, callable in-process for tests.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lglab::cli {

enum ExitCode : int { kSuccess = 0, kInternalError = 1, kUsageError = 2 };

/// args excludes the program name. Records go to `out` unless --output names
/// a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lglab::cli
