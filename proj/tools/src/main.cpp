#include <iostream>
#include <string>
#include <vector>

#include "aqc_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return aqc::cli::run(args, std::cout, std::cerr);
}
