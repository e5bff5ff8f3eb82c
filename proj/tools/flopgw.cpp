#include "flopgw/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return flopgw::cli::run(argc, argv, std::cout, std::cerr); }
