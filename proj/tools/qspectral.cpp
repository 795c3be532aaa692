#include <iostream>

#include "qspectral/cli.hpp"

int main(int argc, char** argv) { return qspectral::cli::run(argc, argv, std::cout, std::cerr); }
