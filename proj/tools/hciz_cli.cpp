#include <iostream>

#include "hciz/cli.hpp"

int main(int argc, char** argv) { return hciz::cli::run(argc, argv, std::cout, std::cerr); }
