#include "ckab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ckab::cli::run(argc, argv, std::cout, std::cerr); }
