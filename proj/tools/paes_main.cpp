#include <iostream>

#include "paes/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return paes::report::run_cli(args, std::cout, std::cerr);
}
