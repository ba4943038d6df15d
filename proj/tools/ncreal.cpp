#include <iostream>

#include "ncreal/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ncreal::run_cli(args, std::cout, std::cerr);
}
