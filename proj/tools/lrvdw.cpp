#include <iostream>
#include <string>
#include <vector>

#include "lrvdw/cli.h"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lrvdw::cli::run(args, std::cout, std::cerr);
}
