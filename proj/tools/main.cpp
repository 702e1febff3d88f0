#include <iostream>

#include "tdoa/cli.hpp"

int main(int argc, char** argv) { return tdoa::cli::run(argc, argv, std::cout, std::cerr); }
