#include <iostream>

#include "biham/cli.hpp"

int main(int argc, char** argv) { return biham::cli::run(argc, argv, std::cout, std::cerr); }
