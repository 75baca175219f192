#include "cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mergeguard::cli::run(argc, argv, std::cout, std::cerr); }
