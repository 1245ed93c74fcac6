#include <iostream>

#include "irf/cli.hpp"

int main(int argc, char** argv) { return irf::run_cli(argc, argv, std::cout, std::cerr); }
