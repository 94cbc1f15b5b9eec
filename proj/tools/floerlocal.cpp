#include <iostream>

#include "floerlocal/cli.hpp"

int main(int argc, char** argv) { return floerlocal::run_cli(argc, argv, std::cout, std::cerr); }
