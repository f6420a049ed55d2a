#include "wulff/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return wulff::run_cli(argc, argv, std::cout, std::cerr);
}
