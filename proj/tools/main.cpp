#include <iostream>

#include "frobsplit/cli.hpp"

int main(int argc, char** argv) {
    return frobsplit::cli::run(argc, argv, std::cout, std::cerr);
}
