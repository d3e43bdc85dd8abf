#include <iostream>

#include "ea_bounds/cli.hpp"

int main(int argc, char** argv) { return ea::cli::run(argc, argv, std::cout, std::cerr); }
