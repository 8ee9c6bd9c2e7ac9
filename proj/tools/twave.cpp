#include "twave/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return twave::cli::run_main(argc, argv, std::cout, std::cerr);
}
