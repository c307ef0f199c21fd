#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace einlab::cli {

/// Runs one command (args exclude the program name). Reports go to `out`,
/// error objects to `err`. Returns the process exit status: 0 on success,
/// 1 on errors, 2 when validate-chart finds deviations beyond tolerance.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace einlab::cli
