#include <iostream>

#include "jplus/cli.hpp"

int main(int argc, char** argv) { return jplus::cli::main(argc, argv, std::cout, std::cerr); }
