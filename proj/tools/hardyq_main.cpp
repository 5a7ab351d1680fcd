#include <iostream>
#include <vector>

#include "hardyq/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hardyq::run_cli(args, std::cout, std::cerr);
}
