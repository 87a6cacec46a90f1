#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convexcalc {

/// Parse and run one CLI invocation. JSON goes to `out`, diagnostics to
/// `err`. Exit codes: 0 success (and Equal verdicts), 1 rule inequality or
/// fuzz failure, 2 invalid input.
int run_task(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace convexcalc
