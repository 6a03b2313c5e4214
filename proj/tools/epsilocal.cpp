#include <iostream>

#include "epsilocal/cli.hpp"

int main(int argc, char** argv) { return epsilocal::run_cli(argc, argv, std::cout, std::cerr); }
