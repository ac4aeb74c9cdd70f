#include <iostream>
#include <string>
#include <vector>

#include "betakit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return betakit::run_cli(args, std::cout, std::cerr);
}
