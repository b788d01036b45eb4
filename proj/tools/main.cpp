#include <iostream>

#include "expofield/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return expofield::run(args, std::cout, std::cerr);
}
