#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return acvass::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
