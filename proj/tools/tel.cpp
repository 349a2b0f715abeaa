#include <iostream>

#include "tel/cli.hpp"

int main(int argc, char** argv) { return tel::cli::main(argc, argv, std::cout, std::cerr); }
