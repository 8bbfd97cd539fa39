#include <iostream>

#include "pencillab/cli/commands.hpp"

int main(int argc, char** argv) { return pencillab::cli::run(argc, argv, std::cout, std::cerr); }
