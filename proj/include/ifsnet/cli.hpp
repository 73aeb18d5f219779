// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifsnet {

/// Runs the command line `args` (args[0] is the program name).
/// Returns 0 for a closed verdict or passed checks, 2 for an exceeded budget
/// or an inconclusive run, 1 for bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ifsnet
