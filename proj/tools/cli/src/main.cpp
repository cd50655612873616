#include <iostream>

#include "bicons_cli/commands.hpp"

int main(int argc, char** argv) { return bicons::cli::run(argc, argv, std::cout, std::cerr); }
