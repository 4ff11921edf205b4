#pragma once

#include <string>
#include <vector>

namespace tsarm {

// Exit codes: 0 success, 2 recommendation not applicable (both divergence
// scores under the threshold), 64 usage error, 65 malformed CSV, 1 anything
// else.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace tsarm
