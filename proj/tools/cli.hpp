#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scaleinv::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUnknownCommand = 2,
  kInvalidParameters = 3,
  kIoFailure = 4,
};

/// Runs one command. `args[0]` is the program name. Diagnostics go to `err`
/// as a single line; help text goes to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "start:stop:step" (inclusive of stop when it lands on the grid) or
/// a comma-separated list. Throws std::invalid_argument.
std::vector<std::size_t> parse_sizes(const std::string& spec);

}  // namespace scaleinv::cli
