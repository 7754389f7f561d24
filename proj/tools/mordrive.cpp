#include <iostream>

#include "mordrive/cli.hpp"

int main(int argc, char** argv) { return mordrive::cli::run(argc, argv, std::cout, std::cerr); }
