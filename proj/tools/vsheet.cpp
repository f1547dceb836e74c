#include <iostream>

#include "vsheet/cli.hpp"

int main(int argc, char** argv) { return vsheet::run_cli(argc, argv, std::cout, std::cerr); }
