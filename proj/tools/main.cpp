#include <string>
#include <vector>

#include "svsparse/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return svsparse::run_cli(args);
}
