#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spbw::cli {

/// Runs `spbw <instance.json> <command> [options]` with args excluding the
/// program name. Writes the JSON report to out and, when human is set, a
/// table to err. Returns the process exit code:
/// 0 ok, 1 some property fails, 2 parse, validation or search-limit error,
/// 3 a theorem check is violated.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool human = false);

}  // namespace spbw::cli
