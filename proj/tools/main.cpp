#include <iostream>

#include "trajint/cli.hpp"

int main(int argc, char** argv) { return trajint::run_cli(argc, argv, std::cout, std::cerr); }
