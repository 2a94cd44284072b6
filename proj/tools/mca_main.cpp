#include <iostream>

#include "mca/cli.hpp"

int main(int argc, char** argv) { return mca::run_cli(argc, argv, std::cout, std::cerr); }
