#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace phl::cli {

/// Parses args (without the program name), runs one subcommand and writes its
/// report to out. Returns 0 when every check passes or a table was emitted,
/// 1 when a check found a violation, 2 on usage or parameter errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phl::cli
