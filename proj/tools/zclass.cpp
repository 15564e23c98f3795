#include <iostream>

#include "zclass/cli.hpp"

int main(int argc, char** argv) { return zclass::run_cli(argc, argv, std::cout, std::cerr); }
