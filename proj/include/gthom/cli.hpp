#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace gthom {

// Dispatches one CLI invocation. Exit codes: 0 success, 1 domain error,
// 2 parse/usage error. Deterministic: identical args + stdin give identical
// output bytes.
int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace gthom
