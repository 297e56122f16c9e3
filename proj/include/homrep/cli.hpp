#pragma once

#include <string>
#include <vector>

namespace homrep {

/// Dispatches one CLI invocation. Exit status: 0 success, 1 domain
/// error, 2 usage error.
int run_cli(const std::vector<std::string> & args);

}
