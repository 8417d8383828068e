#include <iostream>

#include "boostdiff/cli.hpp"

int main(int argc, char** argv) { return boostdiff::cli::run_cli(argc, argv, std::cout, std::cerr); }
