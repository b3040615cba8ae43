#include <iostream>

#include "lcong/cli.hpp"

int main(int argc, char** argv) {
    return lcong::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr, std::cin);
}
