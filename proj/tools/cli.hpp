#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace llab::cli {

// Exit codes: 0 success, 1 internal inconsistency, 2 invalid configuration,
// 3 precondition violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace llab::cli
