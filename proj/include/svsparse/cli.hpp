#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace svsparse {

// Parsed command-line state; one subcommand per invocation.
struct RunConfig {
    std::string subcommand;
    double eps = 0.0;
    double delta = 0.0;
    double phi = 0.05;
    long ell = 1;
    int k = 1;
    double tau = 1.0;
    double s_lower = 0.0;
    uint64_t seed = 0;
    bool verify = true;
    int max_rounds = 0;
    std::string input = "-";
    std::string output = "-";
};

// Runs one subcommand. Returns 0 on success, 1 on algorithmic failure,
// 2 on usage errors. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace svsparse
