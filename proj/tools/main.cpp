#include <iostream>

#include "freewave/cli.hpp"

int main(int argc, char** argv) { return freewave::run_cli(argc, argv, std::cout, std::cerr); }
