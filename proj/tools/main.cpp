#include <iostream>

#include "bures/cli.hpp"

int main(int argc, char **argv) {
    return bures::run_cli(argc, argv, std::cout, std::cerr);
}
