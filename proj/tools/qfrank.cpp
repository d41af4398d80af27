#include <iostream>

#include "qfrank/cli.hpp"

int main(int argc, char** argv) { return qfrank::cli::main(argc, argv, std::cout, std::cerr); }
