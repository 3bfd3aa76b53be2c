#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nasearch::cli::run_cli(argc, argv, std::cout, std::cerr); }
