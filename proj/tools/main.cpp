#include <iostream>

#include "regcoset/cli.hpp"

int main(int argc, char** argv) { return regcoset::cli::run(argc, argv, std::cout, std::cerr); }
