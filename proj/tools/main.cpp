#include <iostream>
#include <string>
#include <vector>

#include "qam/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qam::cli::run(args, std::cout, std::cerr);
}
