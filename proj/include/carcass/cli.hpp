#pragma once

#include <string>
#include <vector>

namespace carcass {

/// Exit codes: 0 success, 2 input validation, 3 unmet precondition
/// (firmness / depth caps), 4 internal exact-identity violation.
int run_cli(const std::vector<std::string>& args);

}  // namespace carcass
