// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <vector>

#include "bbkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<const char*> args(argv + 1, argv + argc);
    return bbkit::cli::run(args, std::cin, std::cout, std::cerr);
}
