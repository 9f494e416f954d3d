#include <iostream>

#include "ncbv/cli.hpp"

int main(int argc, char** argv) { return ncbv::cli::run(argc, argv, std::cout, std::cerr); }
