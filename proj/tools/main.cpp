#include <iostream>

#include "upmu/cli.hpp"

int main(int argc, char** argv) { return upmu::run_cli(argc, argv, std::cout, std::cerr); }
