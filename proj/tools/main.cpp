#include <iostream>

#include "wfomc/cli.hpp"

int main(int argc, char** argv) { return wfomc::cli::run(argc, argv, std::cout, std::cerr); }
