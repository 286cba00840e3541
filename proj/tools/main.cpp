#include <iostream>

#include "rank1/cli.hpp"

int main(int argc, char** argv) { return rank1::run_cli(argc, argv, std::cout, std::cerr); }
