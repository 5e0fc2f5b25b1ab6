#include <iostream>

#include "cstar/cli.hpp"

int main(int argc, char** argv) { return cstar::cli::run_cli(argc, argv, std::cout, std::cerr); }
