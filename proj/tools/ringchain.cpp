#include <iostream>

#include "ringchain/cli.hpp"

int main(int argc, char** argv) { return ringchain::cli::main(argc, argv, std::cout, std::cerr); }
