#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace formcalc::cli {

/// Runs one command. `args` excludes the program name. Returns 0 on success,
/// 1 on a domain error or a residual above --tol, 2 on usage and parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace formcalc::cli
