#include <iostream>

#include "rsrepair/cli.hpp"

int main(int argc, char** argv) { return rsrepair::run_cli(argc, argv, std::cout, std::cerr); }
