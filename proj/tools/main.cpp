#include <iostream>

#include "pointlab/cli.hpp"

int main(int argc, char** argv) {
    return pointlab::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
