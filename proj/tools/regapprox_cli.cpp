#include <iostream>

#include "regapprox/cli.hpp"

int main(int argc, char** argv) { return regapprox::cli::run(argc, argv, std::cout, std::cerr); }
